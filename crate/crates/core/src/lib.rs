//! Two-dimensional linear recurrences
//! `w[i][j] = a[i][j] w[i-1][j] + b[i][j] w[i][j-1] + c[i][j]`
//! and four ways to evaluate them: the row-major oracle, an anti-diagonal
//! wavefront, the equivalent 1D affine recurrence over packed diagonals, and
//! a Kogge-Stone scan over that affine recurrence.

pub mod error;
pub mod generate;
pub mod index;
pub mod instance;
pub mod problem;
pub mod reduction;
pub mod scalar;
pub mod schedule;
pub mod solvers;

pub use error::{Error, Result};
pub use generate::{generate_instance, SampleScalar, GENERATOR_NAME};
pub use index::{diag_len, diag_to_grid, grid_to_diag, DiagonalIndex};
pub use instance::{parse_instance, parse_solution, serialize_instance, serialize_solution, AnyProblem};
pub use problem::{naive_solve, residual, GridSolution, RecurrenceProblem};
pub use reduction::{
    affine_apply, affine_compose, build_h, build_k, pack_solution, reduce, unpack_solution, AffineOperator,
    DiagonalVector, OperatorMatrix,
};
pub use scalar::{ratio, Rational, Scalar, ScalarMode};
pub use schedule::{build_schedule, ceil_log2, ScanPair, ScanSchedule};
pub use solvers::{
    compare_solvers, koggestone_scan_solve, reduced_sequential_solve, report_for, run_solver, wavefront_solve,
    Parallelism, SolveReport, Solved, SolverKind, WorkCounts,
};
