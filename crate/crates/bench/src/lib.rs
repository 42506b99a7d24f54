//! Shared fixtures for the criterion benches.

use recur2d_core::{generate_instance, RecurrenceProblem};

/// Grid sides the benches sweep.
pub const SIZES: [usize; 4] = [4, 8, 16, 32];

/// The instance every bench at side `n` uses.
pub fn fixture(n: usize) -> RecurrenceProblem<f64> {
    generate_instance(n, 0xBE7C).expect("n >= 1")
}
