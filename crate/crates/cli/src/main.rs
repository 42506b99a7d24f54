//! `recur2d`: generate, solve, cross-check, inspect and benchmark 2D recurrences.

mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use recur2d_core::{ScalarMode, SolverKind};

/// Exit status for solver disagreement.
const EXIT_MISMATCH: u8 = 1;
/// Exit status for usage, I/O and parse errors (clap uses the same).
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "recur2d", version, about = "2D linear recurrence solvers and cross-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a random instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "f64")]
        mode: ScalarMode,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one solver on an instance file and write the solution grid.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "scan")]
        solver: SolverKind,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every solver against the naive oracle; exits 1 on disagreement.
    Compare {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Dump the diagonal lengths and the reduced operators h_d, k_d.
    Reduce {
        #[command(flatten)]
        source: Source,
        /// Single diagonal to dump; all of them when omitted.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep sizes and seeds, writing one CSV row per (solver, n, seed).
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seed: Vec<u64>,
        #[arg(long, default_value = "f64")]
        mode: ScalarMode,
        /// Solvers to time; all four when omitted.
        #[arg(long, value_delimiter = ',')]
        solver: Vec<SolverKind>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Where a problem comes from: an instance file or generator parameters.
/// `--mode` only applies to generated problems; files declare their own.
#[derive(Debug, Args)]
struct Source {
    #[arg(long = "in", required_unless_present = "n", conflicts_with_all = ["n", "seed"])]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "f64")]
    mode: ScalarMode,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_MISMATCH),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
