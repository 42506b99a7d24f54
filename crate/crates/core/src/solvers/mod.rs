//! Evaluation strategies for the 2D recurrence and their cross-check against the oracle.
//!
//! Each solver takes a [`Parallelism`] degree. Degree 1 runs the plain
//! sequential path; higher degrees run the data-independent work of each
//! phase on a dedicated rayon pool. Results never depend on the degree: the
//! association order of every sum and composition is fixed by the algorithm.

mod reduced;
mod scan;
mod wavefront;

use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::Result;
use crate::problem::{naive_solve, residual, GridSolution, RecurrenceProblem};
use crate::scalar::{Scalar, ScalarMode};

pub use reduced::reduced_sequential_solve;
pub use scan::koggestone_scan_solve;
pub use wavefront::wavefront_solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Parallelism(NonZeroUsize);

impl Parallelism {
    pub fn sequential() -> Self {
        Parallelism(NonZeroUsize::MIN)
    }

    /// `threads == 0` selects [`Parallelism::available`].
    pub fn new(threads: usize) -> Self {
        NonZeroUsize::new(threads).map_or_else(Self::available, Parallelism)
    }

    pub fn available() -> Self {
        Parallelism(std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }

    pub fn threads(self) -> usize {
        self.0.get()
    }

    pub fn is_sequential(self) -> bool {
        self.threads() == 1
    }

    /// Run `f` with this degree's thread pool current.
    pub(crate) fn install<R: Send>(self, f: impl FnOnce() -> R + Send) -> R {
        if self.is_sequential() {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads()).build() {
            Ok(pool) => pool.install(f),
            // No pool means no extra threads; the results are the same either way.
            Err(_) => f(),
        }
    }

    /// `(0..len).map(f)`, spread over the current pool unless sequential.
    pub(crate) fn map<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        if self.is_sequential() {
            (0..len).map(f).collect()
        } else {
            (0..len).into_par_iter().map(f).collect()
        }
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        Self::available()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Naive,
    Wavefront,
    Reduced,
    Scan,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] = [
        SolverKind::Naive,
        SolverKind::Wavefront,
        SolverKind::Reduced,
        SolverKind::Scan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Naive => "naive",
            SolverKind::Wavefront => "wavefront",
            SolverKind::Reduced => "reduced",
            SolverKind::Scan => "scan",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown solver `{s}` (expected naive, wavefront, reduced or scan)"))
    }
}

/// Work done by one solve.
///
/// `rounds` is the length of the solver's chain of dependent phases: cells
/// for the naive solver, anti-diagonals for wavefront and reduced, scan
/// rounds for the scan. `muladds` counts scalar multiply-adds at dense
/// sizes, so the scan reports its full `n^3` per composition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkCounts {
    pub rounds: u64,
    pub compositions: u64,
    pub muladds: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solved<S> {
    pub solution: GridSolution<S>,
    pub counts: WorkCounts,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solver: SolverKind,
    pub n: usize,
    pub mode: ScalarMode,
    pub rounds: u64,
    pub compositions: u64,
    pub muladds: u64,
    pub elapsed: Duration,
    pub max_residual: f64,
    /// Largest per-cell [`Scalar::deviation`] from the naive oracle.
    pub max_deviation: f64,
}

impl SolveReport {
    pub fn within_tolerance(&self) -> bool {
        self.max_deviation <= self.mode.tolerance()
    }
}

fn naive_counted<S: Scalar>(p: &RecurrenceProblem<S>) -> Result<(GridSolution<S>, WorkCounts)> {
    let s = naive_solve(p)?;
    let cells = (p.n() * p.n()) as u64;
    Ok((
        s,
        WorkCounts {
            rounds: cells,
            compositions: 0,
            muladds: 2 * cells,
        },
    ))
}

/// Run one solver and time it.
pub fn run_solver<S: Scalar>(kind: SolverKind, p: &RecurrenceProblem<S>, par: Parallelism) -> Result<Solved<S>> {
    let start = Instant::now();
    let (solution, counts) = match kind {
        SolverKind::Naive => naive_counted(p)?,
        SolverKind::Wavefront => wavefront::solve_counted(p, par)?,
        SolverKind::Reduced => reduced::solve_counted(p, par)?,
        SolverKind::Scan => scan::solve_counted(p, par)?,
    };
    Ok(Solved {
        solution,
        counts,
        elapsed: start.elapsed(),
    })
}

/// Report for an already-computed solve, checked against `oracle`.
pub fn report_for<S: Scalar>(
    kind: SolverKind,
    p: &RecurrenceProblem<S>,
    solved: &Solved<S>,
    oracle: &GridSolution<S>,
) -> Result<SolveReport> {
    Ok(SolveReport {
        solver: kind,
        n: p.n(),
        mode: S::MODE,
        rounds: solved.counts.rounds,
        compositions: solved.counts.compositions,
        muladds: solved.counts.muladds,
        elapsed: solved.elapsed,
        max_residual: residual(p, &solved.solution)?.to_f64(),
        max_deviation: solved.solution.max_deviation(oracle)?,
    })
}

/// Run all four solvers and check each against the naive oracle.
pub fn compare_solvers<S: Scalar>(p: &RecurrenceProblem<S>, par: Parallelism) -> Result<Vec<SolveReport>> {
    let oracle = naive_solve(p)?;
    SolverKind::ALL
        .into_iter()
        .map(|kind| {
            let solved = run_solver(kind, p, par)?;
            report_for(kind, p, &solved, &oracle)
        })
        .collect()
}
