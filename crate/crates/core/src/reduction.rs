//! Reduction of the 2D recurrence to a 1D affine recurrence over anti-diagonals.
//!
//! Diagonal `d` of the grid is packed into a length-`n` vector `x_d`
//! (zero-padded past its live length). The recurrence then reads
//! `x_d = h_d * x_{d-1} + k_d` with `x_1 = k_1`, where `k_d` carries the `c`
//! terms plus the absorbed boundary contributions and `h_d` is bidiagonal:
//! lower-bidiagonal up to the main anti-diagonal, upper-bidiagonal after it.
//! `h_1` is stored as the zero matrix so that `(h_1, k_1)` is a constant map.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::index::{cell_of, check_diagonal, live_len};
use crate::problem::{GridSolution, RecurrenceProblem};
use crate::scalar::Scalar;

/// One packed anti-diagonal (`x_d` or `k_d`).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalVector<S> {
    n: usize,
    d: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DiagonalVector<S> {
    pub fn new(n: usize, d: usize, entries: Vec<S>) -> Result<Self> {
        check_diagonal(d, n)?;
        if entries.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: entries.len(),
            });
        }
        let len = live_len(d, n);
        if let Some(r) = (len..n).find(|&r| !entries[r].is_zero()) {
            return Err(Error::NonZeroPadding { d, r });
        }
        Ok(DiagonalVector { n, d, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    /// Entries up to the live length, without padding.
    pub fn live(&self) -> &[S] {
        &self.entries[..live_len(self.d, self.n)]
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }
}

/// Dense row-major `n x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<S> {
    n: usize,
    values: Vec<S>,
}

impl<S: Scalar> OperatorMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        OperatorMatrix {
            n,
            values: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            m.values[r * n + r] = S::one();
        }
        m
    }

    pub fn from_rows(n: usize, values: Vec<S>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                found: values.len(),
            });
        }
        Ok(OperatorMatrix { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero-based entry `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.values[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[S] {
        &self.values[row * self.n..(row + 1) * self.n]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    fn set(&mut self, row: usize, col: usize, value: S) {
        self.values[row * self.n + col] = value;
    }

    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    /// Positions of nonzero entries in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|r| (0..self.n).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.get(r, c).is_zero())
            .collect()
    }

    /// Entry `row` of `self * x`.
    #[inline]
    pub fn row_dot(&self, row: usize, x: &[S]) -> S {
        let mut acc = S::zero();
        for (h, v) in self.row(row).iter().zip(x) {
            acc.mul_add_assign(h, v);
        }
        acc
    }

    /// Entry `(row, col)` of `self * rhs`.
    #[inline]
    pub fn product_entry(&self, rhs: &OperatorMatrix<S>, row: usize, col: usize) -> S {
        let mut acc = S::zero();
        for (t, h) in self.row(row).iter().enumerate() {
            acc.mul_add_assign(h, rhs.get(t, col));
        }
        acc
    }

    /// Row-major text, one matrix row per line, entries space-separated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..self.n {
            let line: Vec<String> = self.row(r).iter().map(Scalar::format_token).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// The affine map `x -> h * x + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineOperator<S> {
    h: OperatorMatrix<S>,
    k: Vec<S>,
}

/// Multiply-adds spent by one [`affine_apply`] at side `n`.
pub fn apply_cost(n: usize) -> u64 {
    (n * n) as u64
}

/// Multiply-adds spent by one [`affine_compose`] at side `n`.
pub fn compose_cost(n: usize) -> u64 {
    let n = n as u64;
    n * n * n + n * n
}

impl<S: Scalar> AffineOperator<S> {
    pub fn new(h: OperatorMatrix<S>, k: Vec<S>) -> Result<Self> {
        if k.len() != h.n() {
            return Err(Error::ShapeMismatch {
                expected: h.n(),
                found: k.len(),
            });
        }
        Ok(AffineOperator { h, k })
    }

    pub fn identity(n: usize) -> Self {
        AffineOperator {
            h: OperatorMatrix::identity(n),
            k: vec![S::zero(); n],
        }
    }

    /// The constant map `x -> k`.
    pub fn constant(k: Vec<S>) -> Self {
        AffineOperator {
            h: OperatorMatrix::zeros(k.len()),
            k,
        }
    }

    /// `(h_d, k_d)` for diagonal `d` of `p`.
    pub fn for_diagonal(p: &RecurrenceProblem<S>, d: usize) -> Result<Self> {
        Ok(AffineOperator {
            h: build_h(p, d)?,
            k: build_k(p, d)?.into_entries(),
        })
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    pub fn h(&self) -> &OperatorMatrix<S> {
        &self.h
    }

    pub fn k(&self) -> &[S] {
        &self.k
    }

    pub fn into_parts(self) -> (OperatorMatrix<S>, Vec<S>) {
        (self.h, self.k)
    }

    /// Row `row` of `h * x + k`; rows are independent of each other.
    #[inline]
    pub fn apply_row(&self, row: usize, x: &[S]) -> S {
        let mut y = self.h.row_dot(row, x);
        y = y + self.k[row].clone();
        y
    }

    /// Composite entry for `self ∘ earlier` at flat index `idx` of the
    /// `n * n + n` output: the first `n * n` indices address the matrix
    /// part row-major, the last `n` the vector part.
    #[inline]
    pub fn compose_entry(&self, earlier: &AffineOperator<S>, idx: usize) -> S {
        let n = self.n();
        if idx < n * n {
            self.h.product_entry(&earlier.h, idx / n, idx % n)
        } else {
            self.apply_row(idx - n * n, &earlier.k)
        }
    }

    /// Assemble a composite from entries laid out as in [`AffineOperator::compose_entry`].
    pub fn from_flat(n: usize, mut flat: Vec<S>) -> Result<Self> {
        if flat.len() != n * n + n {
            return Err(Error::ShapeMismatch {
                expected: n * n + n,
                found: flat.len(),
            });
        }
        let k = flat.split_off(n * n);
        Ok(AffineOperator {
            h: OperatorMatrix { n, values: flat },
            k,
        })
    }
}

pub fn affine_apply<S: Scalar>(t: &AffineOperator<S>, x: &[S]) -> Result<Vec<S>> {
    if x.len() != t.n() {
        return Err(Error::ShapeMismatch {
            expected: t.n(),
            found: x.len(),
        });
    }
    Ok((0..t.n()).map(|r| t.apply_row(r, x)).collect())
}

/// `later ∘ earlier = (H_later * H_earlier, H_later * K_earlier + K_later)`.
pub fn affine_compose<S: Scalar>(later: &AffineOperator<S>, earlier: &AffineOperator<S>) -> Result<AffineOperator<S>> {
    let n = later.n();
    if earlier.n() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: earlier.n(),
        });
    }
    let flat = (0..n * n + n).map(|idx| later.compose_entry(earlier, idx)).collect();
    AffineOperator::from_flat(n, flat)
}

pub fn pack_solution<S: Scalar>(s: &GridSolution<S>) -> Vec<DiagonalVector<S>> {
    let n = s.n();
    (1..2 * n)
        .map(|d| {
            let mut entries = vec![S::zero(); n];
            for (r, slot) in entries.iter_mut().take(live_len(d, n)).enumerate() {
                let (i, j) = cell_of(d, r, n);
                *slot = s.w(i, j).clone();
            }
            DiagonalVector { n, d, entries }
        })
        .collect()
}

pub fn unpack_solution<S: Scalar>(xs: &[DiagonalVector<S>], n: usize) -> Result<GridSolution<S>> {
    let mut s = GridSolution::zeros(n)?;
    if xs.len() != 2 * n - 1 {
        return Err(Error::ShapeMismatch {
            expected: 2 * n - 1,
            found: xs.len(),
        });
    }
    for (pos, x) in xs.iter().enumerate() {
        let d = pos + 1;
        if x.n != n || x.d != d {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: x.n,
            });
        }
        for (r, v) in x.live().iter().enumerate() {
            let (i, j) = cell_of(d, r, n);
            s.set(i, j, v.clone());
        }
    }
    Ok(s)
}

/// Scatter the live part of raw packed diagonals (`xs[d-1]` holds `x_d`) into a grid.
pub(crate) fn unpack_raw<S: Scalar>(xs: &[Vec<S>], n: usize) -> Result<GridSolution<S>> {
    let mut s = GridSolution::zeros(n)?;
    for (pos, x) in xs.iter().enumerate() {
        let d = pos + 1;
        for (r, v) in x.iter().take(live_len(d, n)).enumerate() {
            let (i, j) = cell_of(d, r, n);
            s.set(i, j, v.clone());
        }
    }
    Ok(s)
}

pub fn build_k<S: Scalar>(p: &RecurrenceProblem<S>, d: usize) -> Result<DiagonalVector<S>> {
    let n = p.n();
    check_diagonal(d, n)?;
    let mut entries = vec![S::zero(); n];
    for (r, slot) in entries.iter_mut().take(live_len(d, n)).enumerate() {
        let (i, j) = cell_of(d, r, n);
        *slot = p.c(i, j).clone();
    }
    if d <= n {
        // Top-row cell (1, d) reads the top boundary, left-column cell (d, 1)
        // the left one; for d = 1 both land on the same entry.
        entries[0].mul_add_assign(p.a(1, d), p.c0j(d));
        entries[d - 1].mul_add_assign(p.b(d, 1), p.ci0(d));
    }
    Ok(DiagonalVector { n, d, entries })
}

pub fn build_h<S: Scalar>(p: &RecurrenceProblem<S>, d: usize) -> Result<OperatorMatrix<S>> {
    let n = p.n();
    check_diagonal(d, n)?;
    let mut h = OperatorMatrix::zeros(n);
    if d == 1 {
        return Ok(h);
    }
    if d <= n {
        // x_{d-1}[r] = w[r+1][d-1-r]: cell (r+1, d-r) sees its north
        // neighbour at position r-1 and its west neighbour at position r.
        for r in 0..d {
            let (i, j) = cell_of(d, r, n);
            if r >= 1 {
                h.set(r, r - 1, p.a(i, j).clone());
            }
            if r + 1 < d {
                h.set(r, r, p.b(i, j).clone());
            }
        }
    } else {
        // Past the main anti-diagonal the previous diagonal starts one row
        // higher, so north sits at position r and west at r + 1.
        for r in 0..live_len(d, n) {
            let (i, j) = cell_of(d, r, n);
            h.set(r, r, p.a(i, j).clone());
            h.set(r, r + 1, p.b(i, j).clone());
        }
    }
    Ok(h)
}

/// All operators `(h_d, k_d)` for `d = 1..=2n-1`, in order.
pub fn reduce<S: Scalar>(p: &RecurrenceProblem<S>) -> Result<Vec<AffineOperator<S>>> {
    p.validate()?;
    (1..2 * p.n()).map(|d| AffineOperator::for_diagonal(p, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::generate_instance;
    use crate::problem::naive_solve;
    use crate::scalar::{ratio, Rational};
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
        (0..n)
            .map(|_| ratio(rng.random_range(-9..=9), rng.random_range(1..=9)))
            .collect()
    }

    fn random_op(rng: &mut ChaCha8Rng, n: usize) -> AffineOperator<Rational> {
        let h = OperatorMatrix::from_rows(n, random_vec(rng, n * n)).unwrap();
        AffineOperator::new(h, random_vec(rng, n)).unwrap()
    }

    fn nested(later: &AffineOperator<Rational>, earlier: &AffineOperator<Rational>, x: &[Rational]) -> Vec<Rational> {
        // Independent of compose: two explicit mat-vec passes.
        let step = |t: &AffineOperator<Rational>, v: &[Rational]| -> Vec<Rational> {
            (0..v.len())
                .map(|r| {
                    let mut acc = t.k()[r].clone();
                    for (c, vc) in v.iter().enumerate() {
                        acc += t.h().get(r, c).clone() * vc.clone();
                    }
                    acc
                })
                .collect()
        };
        step(later, &step(earlier, x))
    }

    #[test]
    fn pack_examples() {
        let p = generate_instance::<Rational>(4, 1).unwrap();
        let s = naive_solve(&p).unwrap();
        let xs = pack_solution(&s);
        assert_eq!(xs.len(), 7);
        assert_eq!(
            xs[3].entries(),
            &[
                s.w(1, 4).clone(),
                s.w(2, 3).clone(),
                s.w(3, 2).clone(),
                s.w(4, 1).clone()
            ]
        );
        assert_eq!(
            xs[5].entries(),
            &[s.w(3, 4).clone(), s.w(4, 3).clone(), Rational::zero(), Rational::zero()]
        );
        assert_eq!(xs[2].live(), &[s.w(1, 3).clone(), s.w(2, 2).clone(), s.w(3, 1).clone()]);

        let one = GridSolution::from_rows(1, vec![ratio(9, 2)]).unwrap();
        let xs = pack_solution(&one);
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].entries(), &[ratio(9, 2)]);
    }

    #[test]
    fn unpack_examples() {
        let p = RecurrenceProblem::filled(2, Rational::one()).unwrap();
        let s = naive_solve(&p).unwrap();
        assert_eq!(unpack_solution(&pack_solution(&s), 2).unwrap(), s);

        let p = generate_instance::<Rational>(4, 2).unwrap();
        let s = naive_solve(&p).unwrap();
        let xs = pack_solution(&s);
        let back = unpack_solution(&xs, 4).unwrap();
        assert_eq!(back.w(4, 1), &xs[3].entries()[3]);

        let mut too_long = pack_solution(&s);
        too_long.push(too_long[0].clone());
        assert_eq!(
            unpack_solution(&too_long, 4),
            Err(Error::ShapeMismatch { expected: 7, found: 8 })
        );
    }

    #[test]
    fn diagonal_vector_rejects_bad_padding() {
        assert_eq!(
            DiagonalVector::new(3, 5, vec![1.0, 0.0, 2.0]),
            Err(Error::NonZeroPadding { d: 5, r: 2 })
        );
        assert!(DiagonalVector::new(3, 5, vec![1.0, 0.0, 0.0]).is_ok());
        assert!(matches!(
            DiagonalVector::new(3, 6, vec![0.0; 3]),
            Err(Error::DiagonalOutOfRange { .. })
        ));
    }

    #[test]
    fn build_rejects_out_of_range_diagonal() {
        let p = RecurrenceProblem::filled(3, 1.0).unwrap();
        assert_eq!(build_k(&p, 0), Err(Error::DiagonalOutOfRange { d: 0, n: 3 }));
        assert_eq!(build_h(&p, 6), Err(Error::DiagonalOutOfRange { d: 6, n: 3 }));
    }

    #[test]
    fn h1_is_zero_and_apply_of_constant_is_k() {
        let p = generate_instance::<Rational>(3, 4).unwrap();
        assert_eq!(build_h(&p, 1).unwrap(), OperatorMatrix::zeros(3));
        let t = AffineOperator::for_diagonal(&p, 1).unwrap();
        let x = vec![ratio(5, 1), ratio(-2, 3), ratio(1, 7)];
        assert_eq!(affine_apply(&t, &x).unwrap(), t.k());
        let id = AffineOperator::<Rational>::identity(3);
        assert_eq!(affine_apply(&id, &x).unwrap(), x);
        assert!(matches!(affine_apply(&id, &x[..2]), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn first_step_on_all_ones_matches_oracle() {
        let p = RecurrenceProblem::filled(4, Rational::one()).unwrap();
        let xs = pack_solution(&naive_solve(&p).unwrap());
        let t2 = AffineOperator::for_diagonal(&p, 2).unwrap();
        assert_eq!(affine_apply(&t2, xs[0].entries()).unwrap(), xs[1].entries());
    }

    #[test]
    fn every_diagonal_step_matches_oracle() {
        for n in 1..=10 {
            for seed in 0..5 {
                let p = generate_instance::<Rational>(n, seed).unwrap();
                let xs = pack_solution(&naive_solve(&p).unwrap());
                assert_eq!(build_k(&p, 1).unwrap(), xs[0]);
                for d in 2..2 * n {
                    let t = AffineOperator::for_diagonal(&p, d).unwrap();
                    let next = affine_apply(&t, xs[d - 2].entries()).unwrap();
                    assert_eq!(next, xs[d - 1].entries(), "n={n} seed={seed} d={d}");
                }
            }
        }
    }

    #[test]
    fn fresh_operators_are_bidiagonal() {
        for n in 1..=16 {
            let p = generate_instance::<Rational>(n, n as u64).unwrap();
            for d in 1..2 * n {
                let len = live_len(d, n);
                let h = build_h(&p, d).unwrap();
                let bound = 2 * len - usize::from(d <= n);
                assert!(h.nonzero_count() <= bound, "n={n} d={d}");
                for (r, c) in h.nonzeros() {
                    assert!(r < len);
                    if d <= n {
                        assert!(c == r || c + 1 == r, "lower bidiagonal violated at ({r},{c})");
                    } else {
                        assert!(c == r || c == r + 1, "upper bidiagonal violated at ({r},{c})");
                    }
                }
                let k = build_k(&p, d).unwrap();
                assert!(k.entries()[len..].iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn compose_identity_laws_and_constant_absorption() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = random_op(&mut rng, 4);
        let id = AffineOperator::identity(4);
        assert_eq!(affine_compose(&id, &t).unwrap(), t);
        assert_eq!(affine_compose(&t, &id).unwrap(), t);

        let p = generate_instance::<Rational>(4, 9).unwrap();
        let t1 = AffineOperator::for_diagonal(&p, 1).unwrap();
        let t2 = AffineOperator::for_diagonal(&p, 2).unwrap();
        let c = affine_compose(&t2, &t1).unwrap();
        assert_eq!(c.h(), &OperatorMatrix::zeros(4));
        let xs = pack_solution(&naive_solve(&p).unwrap());
        assert_eq!(c.k(), xs[1].entries());

        let small = AffineOperator::<Rational>::identity(3);
        assert!(matches!(affine_compose(&t, &small), Err(Error::ShapeMismatch { .. })));
    }

    /// Bandwidth (number of occupied diagonals) of a boolean mask.
    fn bandwidth(mask: &[bool], n: usize) -> usize {
        let offsets: Vec<isize> = (0..n * n)
            .filter(|&idx| mask[idx])
            .map(|idx| (idx % n) as isize - (idx / n) as isize)
            .collect();
        match (offsets.iter().min(), offsets.iter().max()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize,
            _ => 0,
        }
    }

    #[test]
    fn composed_bandwidth_grows_at_most_linearly() {
        for n in 2..=16 {
            let p = generate_instance::<Rational>(n, 100 + n as u64).unwrap();
            for start in 2..2 * n {
                let first = build_h(&p, start).unwrap();
                let mut mask: Vec<bool> = first.values().iter().map(|v| !v.is_zero()).collect();
                let mut actual = first;
                for (count, d) in (start + 1..2 * n).enumerate() {
                    let k = count + 2;
                    let h = build_h(&p, d).unwrap();
                    let hm: Vec<bool> = h.values().iter().map(|v| !v.is_zero()).collect();
                    mask = (0..n * n)
                        .map(|idx| (0..n).any(|t| hm[(idx / n) * n + t] && mask[t * n + idx % n]))
                        .collect();
                    let flat = (0..n * n)
                        .map(|idx| h.product_entry(&actual, idx / n, idx % n))
                        .collect();
                    actual = OperatorMatrix::from_rows(n, flat).unwrap();
                    assert!(bandwidth(&mask, n) <= k + 1, "n={n} start={start} k={k}");
                    for (idx, v) in actual.values().iter().enumerate() {
                        assert!(v.is_zero() || mask[idx]);
                    }
                }
            }
        }
    }

    #[test]
    fn text_dump_is_row_major() {
        let h = OperatorMatrix::from_rows(2, vec![ratio(1, 2), ratio(0, 1), ratio(-3, 1), ratio(4, 5)]).unwrap();
        assert_eq!(h.to_text(), "1/2 0\n-3 4/5\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compose_matches_nested_application(n in 1usize..=8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t1 = random_op(&mut rng, n);
            let t2 = random_op(&mut rng, n);
            let x = random_vec(&mut rng, n);
            let composed = affine_compose(&t2, &t1).unwrap();
            prop_assert_eq!(affine_apply(&composed, &x).unwrap(), nested(&t2, &t1, &x));
        }

        #[test]
        fn compose_is_associative(n in 1usize..=8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t1 = random_op(&mut rng, n);
            let t2 = random_op(&mut rng, n);
            let t3 = random_op(&mut rng, n);
            let left = affine_compose(&affine_compose(&t3, &t2).unwrap(), &t1).unwrap();
            let right = affine_compose(&t3, &affine_compose(&t2, &t1).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
