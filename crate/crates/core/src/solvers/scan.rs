use crate::error::Result;
use crate::problem::{naive_solve, GridSolution, RecurrenceProblem};
use crate::reduction::{compose_cost, unpack_raw, AffineOperator};
use crate::scalar::Scalar;
use crate::schedule::build_schedule;

use super::{report_for, Parallelism, SolveReport, Solved, SolverKind, WorkCounts};

/// Inclusive Kogge-Stone scan over `(h_d, k_d)`, `d = 1..=2n-1`.
///
/// `h_1 = 0` annihilates the matrix part of every prefix, so the vector part
/// of prefix `d` is `x_d`. The report is checked against the naive oracle.
pub fn koggestone_scan_solve<S: Scalar>(
    p: &RecurrenceProblem<S>,
    par: Parallelism,
) -> Result<(GridSolution<S>, SolveReport)> {
    let start = std::time::Instant::now();
    let (solution, counts) = solve_counted(p, par)?;
    let solved = Solved {
        solution,
        counts,
        elapsed: start.elapsed(),
    };
    let report = report_for(SolverKind::Scan, p, &solved, &naive_solve(p)?)?;
    Ok((solved.solution, report))
}

pub(crate) fn solve_counted<S: Scalar>(
    p: &RecurrenceProblem<S>,
    par: Parallelism,
) -> Result<(GridSolution<S>, WorkCounts)> {
    p.validate()?;
    let n = p.n();
    let m = 2 * n - 1;
    let schedule = build_schedule(m)?;
    let mut counts = WorkCounts {
        muladds: 2 * n as u64,
        ..WorkCounts::default()
    };
    let ops = par.install(|| -> Result<Vec<AffineOperator<S>>> {
        let mut ops: Vec<AffineOperator<S>> = par
            .map(m, |pos| AffineOperator::for_diagonal(p, pos + 1))
            .into_iter()
            .collect::<Result<_>>()?;
        let width = n * n + n;
        for round in schedule.rounds() {
            // Every entry of every composite in the round reads only the
            // previous round's operators, so all of them may run at once.
            let composed = {
                let ops = &ops;
                par.map(round.len() * width, |idx| {
                    let pair = round[idx / width];
                    ops[pair.target].compose_entry(&ops[pair.source], idx % width)
                })
            };
            let mut entries = composed.into_iter();
            for pair in round {
                let flat: Vec<S> = entries.by_ref().take(width).collect();
                ops[pair.target] = AffineOperator::from_flat(n, flat)?;
            }
            counts.rounds += 1;
            counts.compositions += round.len() as u64;
            counts.muladds += round.len() as u64 * compose_cost(n);
        }
        Ok(ops)
    })?;
    let xs: Vec<Vec<S>> = ops.into_iter().map(|op| op.into_parts().1).collect();
    Ok((unpack_raw(&xs, n)?, counts))
}
