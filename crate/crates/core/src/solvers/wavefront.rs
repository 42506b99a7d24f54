use crate::error::Result;
use crate::index::{cell_of, live_len};
use crate::problem::{north, west, GridSolution, RecurrenceProblem};
use crate::scalar::Scalar;

use super::{Parallelism, WorkCounts};

/// Anti-diagonal sweep: `2n - 1` phases, every cell of a phase independent.
pub fn wavefront_solve<S: Scalar>(p: &RecurrenceProblem<S>, par: Parallelism) -> Result<GridSolution<S>> {
    solve_counted(p, par).map(|(s, _)| s)
}

pub(crate) fn solve_counted<S: Scalar>(
    p: &RecurrenceProblem<S>,
    par: Parallelism,
) -> Result<(GridSolution<S>, WorkCounts)> {
    p.validate()?;
    let n = p.n();
    let mut s = GridSolution::zeros(n)?;
    let mut counts = WorkCounts::default();
    par.install(|| {
        for d in 1..2 * n {
            let len = live_len(d, n);
            let phase = {
                let s = &s;
                par.map(len, |r| {
                    let (i, j) = cell_of(d, r, n);
                    p.cell_value(i, j, north(p, s, i, j), west(p, s, i, j))
                })
            };
            for (r, v) in phase.into_iter().enumerate() {
                let (i, j) = cell_of(d, r, n);
                s.set(i, j, v);
            }
            counts.rounds += 1;
            counts.muladds += 2 * len as u64;
        }
    });
    Ok((s, counts))
}
