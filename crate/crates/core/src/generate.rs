//! Deterministic random instances.
//!
//! Instances come from a ChaCha8 stream seeded with the user seed, so a given
//! `(n, seed, mode)` always yields the same problem on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::RecurrenceProblem;
use crate::scalar::{ratio, Rational, Scalar};

/// Name recorded alongside benchmark output.
pub const GENERATOR_NAME: &str = "chacha8-seed_from_u64";

/// Largest numerator magnitude and denominator of exact-mode samples.
pub const EXACT_BOUND: i64 = 9;

/// Scalars that can be drawn for random instances.
pub trait SampleScalar: Scalar {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl SampleScalar for f64 {
    /// Uniform on `[-1, 1]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random_range(-1.0..=1.0)
    }
}

impl SampleScalar for Rational {
    /// `p / q` with `|p| <= 9` and `1 <= q <= 9`, so values also lie in `[-9, 9]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let p = rng.random_range(-EXACT_BOUND..=EXACT_BOUND);
        let q = rng.random_range(1..=EXACT_BOUND);
        ratio(p, q)
    }
}

pub fn generate_instance<S: SampleScalar>(n: usize, seed: u64) -> Result<RecurrenceProblem<S>> {
    if n == 0 {
        return Err(Error::NonPositiveN);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |len: usize| -> Vec<S> { (0..len).map(|_| S::sample(&mut rng)).collect() };
    let a = draw(n * n);
    let b = draw(n * n);
    let c = draw(n * n);
    let c0j = draw(n);
    let ci0 = draw(n);
    RecurrenceProblem::new(n, a, b, c, c0j, ci0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        assert_eq!(
            generate_instance::<f64>(4, 7).unwrap(),
            generate_instance::<f64>(4, 7).unwrap()
        );
        assert_eq!(
            generate_instance::<Rational>(4, 7).unwrap(),
            generate_instance::<Rational>(4, 7).unwrap()
        );
    }

    #[test]
    fn different_seed_different_instance() {
        assert_ne!(
            generate_instance::<f64>(4, 7).unwrap(),
            generate_instance::<f64>(4, 8).unwrap()
        );
        assert_ne!(
            generate_instance::<Rational>(4, 7).unwrap(),
            generate_instance::<Rational>(4, 8).unwrap()
        );
    }

    #[test]
    fn zero_side_rejected() {
        assert_eq!(generate_instance::<f64>(0, 1), Err(Error::NonPositiveN));
    }

    #[test]
    fn samples_stay_in_range() {
        let p = generate_instance::<f64>(12, 3).unwrap();
        assert!(p
            .a_grid()
            .iter()
            .chain(p.top_boundary())
            .all(|v| (-1.0..=1.0).contains(v)));
        let p = generate_instance::<Rational>(12, 3).unwrap();
        let bound = ratio(EXACT_BOUND, 1);
        assert!(p.c_grid().iter().all(|v| Scalar::abs(v) <= bound));
    }
}
