use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use recur2d_core::{
    build_h, build_k, compare_solvers, diag_len, naive_solve, parse_instance, run_solver, serialize_solution,
    AnyProblem, Parallelism, RecurrenceProblem, Scalar,
};

use crate::{bench, Command, Source};

/// Dispatch on the scalar mode of an [`AnyProblem`].
macro_rules! with_problem {
    ($problem:expr, $p:ident => $body:expr) => {
        match $problem {
            AnyProblem::Exact($p) => $body,
            AnyProblem::Approx($p) => $body,
        }
    };
}

fn parallelism(threads: Option<usize>) -> Parallelism {
    threads.map_or_else(Parallelism::available, Parallelism::new)
}

fn read_problem(path: &Path) -> Result<AnyProblem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load(source: &Source) -> Result<AnyProblem> {
    match (&source.input, source.n) {
        (Some(path), _) => read_problem(path),
        (None, Some(n)) => Ok(AnyProblem::generate(n, source.seed.unwrap_or(0), source.mode)?),
        (None, None) => bail!("either --in or --n is required"),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Returns `Ok(false)` when solvers disagree beyond tolerance.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Gen { n, seed, mode, out } => {
            let p = AnyProblem::generate(n, seed, mode)?;
            emit(out.as_deref(), &p.to_text())?;
        }
        Command::Solve {
            input,
            solver,
            threads,
            out,
        } => {
            let problem = read_problem(&input)?;
            let text = with_problem!(&problem, p => {
                let solved = run_solver(solver, p, parallelism(threads))?;
                eprintln!(
                    "{solver}: n={} rounds={} compositions={} muladds={} elapsed={:?}",
                    p.n(),
                    solved.counts.rounds,
                    solved.counts.compositions,
                    solved.counts.muladds,
                    solved.elapsed
                );
                serialize_solution(&solved.solution)
            });
            emit(out.as_deref(), &text)?;
        }
        Command::Compare { source, threads } => {
            let problem = load(&source)?;
            let reports = with_problem!(&problem, p => compare_solvers(p, parallelism(threads))?);
            println!(
                "{:<10} {:>7} {:>12} {:>14} {:>12} {:>12} {:>12}  status",
                "solver", "rounds", "compositions", "muladds", "elapsed_ns", "residual", "max_dev"
            );
            let mut ok = true;
            for r in &reports {
                let pass = r.within_tolerance();
                ok &= pass;
                println!(
                    "{:<10} {:>7} {:>12} {:>14} {:>12} {:>12.3e} {:>12.3e}  {}",
                    r.solver.as_str(),
                    r.rounds,
                    r.compositions,
                    r.muladds,
                    r.elapsed.as_nanos(),
                    r.max_residual,
                    r.max_deviation,
                    if pass { "ok" } else { "MISMATCH" }
                );
            }
            println!(
                "n={} mode={} tolerance={:e}: {}",
                problem.n(),
                problem.mode(),
                problem.mode().tolerance(),
                if ok { "all solvers agree" } else { "solvers disagree" }
            );
            return Ok(ok);
        }
        Command::Reduce { source, d, out } => {
            let problem = load(&source)?;
            let text = with_problem!(&problem, p => reduction_dump(p, d)?);
            emit(out.as_deref(), &text)?;
        }
        Command::Bench {
            n,
            seed,
            mode,
            solver,
            threads,
            repeats,
            out,
        } => {
            let spec = bench::BenchSpec {
                sizes: n,
                seeds: seed,
                mode,
                solvers: solver,
                threads: parallelism(threads),
                repeats,
            };
            let records = bench::run(&spec)?;
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
                    bench::write_csv(file, &records)?;
                }
                None => bench::write_csv(std::io::stdout().lock(), &records)?,
            }
            return Ok(records.iter().all(|r| r.max_dev <= mode.tolerance()));
        }
    }
    Ok(true)
}

fn reduction_dump<S: Scalar>(p: &RecurrenceProblem<S>, only: Option<usize>) -> Result<String> {
    let n = p.n();
    let mut out = format!("# n {n} mode {}\n", S::MODE);
    let diagonals: Vec<usize> = match only {
        Some(d) => {
            diag_len(d, n)?;
            vec![d]
        }
        None => (1..2 * n).collect(),
    };
    out.push_str("diag_len\n");
    for d in 1..2 * n {
        writeln!(out, "{d} {}", diag_len(d, n)?)?;
    }
    for d in diagonals {
        writeln!(out, "h_{d}")?;
        out.push_str(&build_h(p, d)?.to_text());
        writeln!(out, "k_{d}")?;
        let k: Vec<String> = build_k(p, d)?.entries().iter().map(Scalar::format_token).collect();
        writeln!(out, "{}", k.join(" "))?;
    }
    // The oracle solution lets a reader check x_d = h_d x_{d-1} + k_d by hand.
    if n <= 8 {
        out.push_str("naive_solution\n");
        out.push_str(&serialize_solution(&naive_solve(p)?));
    }
    Ok(out)
}
