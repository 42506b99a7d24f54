//! CSV benchmark sweep.
//!
//! Timing is the median wall-clock time over `repeats` runs on a monotonic
//! clock. Counts come from the solvers' own instrumentation and do not vary
//! between runs.

use std::io::Write;
use std::time::Duration;

use anyhow::{ensure, Result};
use recur2d_core::{
    generate_instance, naive_solve, run_solver, Parallelism, Rational, SampleScalar, ScalarMode, SolverKind,
    GENERATOR_NAME,
};
use serde::Serialize;

pub const CSV_HEADER: &str = "solver,n,seed,mode,rounds,compositions,muladds,elapsed_ns,max_dev";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub solver: String,
    pub n: usize,
    pub seed: u64,
    pub mode: String,
    pub rounds: u64,
    pub compositions: u64,
    pub muladds: u64,
    pub elapsed_ns: u128,
    pub max_dev: f64,
}

pub struct BenchSpec {
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub mode: ScalarMode,
    /// Empty means every solver.
    pub solvers: Vec<SolverKind>,
    pub threads: Parallelism,
    pub repeats: usize,
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn sweep<S: SampleScalar>(spec: &BenchSpec, solvers: &[SolverKind]) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &n in &spec.sizes {
        for &seed in &spec.seeds {
            let p = generate_instance::<S>(n, seed)?;
            let oracle = naive_solve(&p)?;
            for &kind in solvers {
                let mut times = Vec::with_capacity(spec.repeats);
                let mut last = None;
                for _ in 0..spec.repeats {
                    let solved = run_solver(kind, &p, spec.threads)?;
                    times.push(solved.elapsed);
                    last = Some(solved);
                }
                let Some(solved) = last else { unreachable!() };
                records.push(BenchRecord {
                    solver: kind.to_string(),
                    n,
                    seed,
                    mode: spec.mode.to_string(),
                    rounds: solved.counts.rounds,
                    compositions: solved.counts.compositions,
                    muladds: solved.counts.muladds,
                    elapsed_ns: median(times).as_nanos(),
                    max_dev: solved.solution.max_deviation(&oracle)?,
                });
            }
        }
    }
    Ok(records)
}

pub fn run(spec: &BenchSpec) -> Result<Vec<BenchRecord>> {
    ensure!(spec.repeats >= 1, "--repeats must be at least 1");
    ensure!(spec.sizes.iter().all(|&n| n >= 1), "--n values must be at least 1");
    let solvers = if spec.solvers.is_empty() {
        SolverKind::ALL.to_vec()
    } else {
        spec.solvers.clone()
    };
    eprintln!(
        "# generator={GENERATOR_NAME} seeds={:?} mode={} threads={} repeats={}",
        spec.seeds,
        spec.mode,
        spec.threads.threads(),
        spec.repeats
    );
    match spec.mode {
        ScalarMode::Exact => sweep::<Rational>(spec, &solvers),
        ScalarMode::Approx => sweep::<f64>(spec, &solvers),
    }
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(CSV_HEADER.split(','))?;
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_row_per_combination() {
        let spec = BenchSpec {
            sizes: vec![1, 3],
            seeds: vec![4, 5, 6],
            mode: ScalarMode::Exact,
            solvers: vec![SolverKind::Naive, SolverKind::Scan],
            threads: Parallelism::sequential(),
            repeats: 2,
        };
        let records = run(&spec).unwrap();
        assert_eq!(records.len(), 2 * 3 * 2);
        assert!(records.iter().all(|r| r.max_dev == 0.0));
        let mut buf = Vec::new();
        write_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + records.len());
        assert!(lines[1].starts_with("naive,1,4,exact,1,0,2,"));
    }

    #[test]
    fn median_picks_middle() {
        let ms = Duration::from_millis;
        assert_eq!(median(vec![ms(5), ms(1), ms(3)]), ms(3));
    }
}
