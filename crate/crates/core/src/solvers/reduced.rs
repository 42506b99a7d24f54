use crate::error::Result;
use crate::problem::{GridSolution, RecurrenceProblem};
use crate::reduction::{apply_cost, build_k, unpack_raw, AffineOperator};
use crate::scalar::Scalar;

use super::{Parallelism, WorkCounts};

/// Iterate `x_1 = k_1`, `x_d = h_d x_{d-1} + k_d` and scatter the diagonals back to the grid.
pub fn reduced_sequential_solve<S: Scalar>(p: &RecurrenceProblem<S>, par: Parallelism) -> Result<GridSolution<S>> {
    solve_counted(p, par).map(|(s, _)| s)
}

pub(crate) fn solve_counted<S: Scalar>(
    p: &RecurrenceProblem<S>,
    par: Parallelism,
) -> Result<(GridSolution<S>, WorkCounts)> {
    p.validate()?;
    let n = p.n();
    let mut counts = WorkCounts {
        rounds: 1,
        compositions: 0,
        // boundary absorption in k_1..k_n
        muladds: 2 * n as u64,
    };
    let xs = par.install(|| -> Result<Vec<Vec<S>>> {
        let mut xs = Vec::with_capacity(2 * n - 1);
        xs.push(build_k(p, 1)?.into_entries());
        for d in 2..2 * n {
            let t = AffineOperator::for_diagonal(p, d)?;
            let prev = &xs[d - 2];
            let next = par.map(n, |r| t.apply_row(r, prev));
            xs.push(next);
            counts.rounds += 1;
            counts.muladds += apply_cost(n);
        }
        Ok(xs)
    })?;
    Ok((unpack_raw(&xs, n)?, counts))
}
