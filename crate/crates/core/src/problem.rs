//! Problem and solution grids, the sequential oracle, and residual checking.
//!
//! The recurrence is
//!
//! ```text
//! w[i][j] = a[i][j] * w[i-1][j] + b[i][j] * w[i][j-1] + c[i][j]    1 <= i, j <= n
//! w[0][j] = c0j[j],  w[i][0] = ci0[i]
//! ```
//!
//! Storage is zero-based and row-major; the `(i, j)` accessors are one-based
//! to mirror the subscripts above. The corner `c[0][0]` is never read and is
//! not stored.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceProblem<S> {
    n: usize,
    a: Vec<S>,
    b: Vec<S>,
    c: Vec<S>,
    c0j: Vec<S>,
    ci0: Vec<S>,
}

fn check_len<S>(name: &'static str, v: &[S], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            name,
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

impl<S: Scalar> RecurrenceProblem<S> {
    /// Build a problem from row-major `n x n` coefficient grids and the two boundary vectors.
    pub fn new(n: usize, a: Vec<S>, b: Vec<S>, c: Vec<S>, c0j: Vec<S>, ci0: Vec<S>) -> Result<Self> {
        let p = RecurrenceProblem { n, a, b, c, c0j, ci0 };
        p.validate()?;
        Ok(p)
    }

    /// Problem of side `n` filled entirely with `value`.
    pub fn filled(n: usize, value: S) -> Result<Self> {
        let grid = vec![value.clone(); n * n];
        let edge = vec![value; n];
        Self::new(n, grid.clone(), grid.clone(), grid, edge.clone(), edge)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::NonPositiveN);
        }
        let nn = self.n * self.n;
        check_len("a", &self.a, nn)?;
        check_len("b", &self.b, nn)?;
        check_len("c", &self.c, nn)?;
        check_len("c0j", &self.c0j, self.n)?;
        check_len("ci0", &self.ci0, self.n)?;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        (i - 1) * self.n + (j - 1)
    }

    pub fn a(&self, i: usize, j: usize) -> &S {
        &self.a[self.at(i, j)]
    }

    pub fn b(&self, i: usize, j: usize) -> &S {
        &self.b[self.at(i, j)]
    }

    pub fn c(&self, i: usize, j: usize) -> &S {
        &self.c[self.at(i, j)]
    }

    /// Top boundary `w[0][j]`.
    pub fn c0j(&self, j: usize) -> &S {
        &self.c0j[j - 1]
    }

    /// Left boundary `w[i][0]`.
    pub fn ci0(&self, i: usize) -> &S {
        &self.ci0[i - 1]
    }

    pub fn a_grid(&self) -> &[S] {
        &self.a
    }

    pub fn b_grid(&self) -> &[S] {
        &self.b
    }

    pub fn c_grid(&self) -> &[S] {
        &self.c
    }

    pub fn top_boundary(&self) -> &[S] {
        &self.c0j
    }

    pub fn left_boundary(&self) -> &[S] {
        &self.ci0
    }

    /// Same coefficients with `c` and both boundaries multiplied by `lambda`.
    pub fn scale_inhomogeneous(&self, lambda: &S) -> Self {
        let scale = |v: &[S]| v.iter().map(|x| x.clone() * lambda.clone()).collect();
        RecurrenceProblem {
            n: self.n,
            a: self.a.clone(),
            b: self.b.clone(),
            c: scale(&self.c),
            c0j: scale(&self.c0j),
            ci0: scale(&self.ci0),
        }
    }

    /// Evaluate one cell given its north and west neighbours.
    #[inline]
    pub(crate) fn cell_value(&self, i: usize, j: usize, north: &S, west: &S) -> S {
        let mut w = self.c(i, j).clone();
        w.mul_add_assign(self.a(i, j), north);
        w.mul_add_assign(self.b(i, j), west);
        w
    }
}

/// Solved values `w[i][j]` for `1 <= i, j <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSolution<S> {
    n: usize,
    w: Vec<S>,
}

impl<S: Scalar> GridSolution<S> {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositiveN);
        }
        Ok(GridSolution {
            n,
            w: vec![S::zero(); n * n],
        })
    }

    /// Wrap a row-major `n x n` grid.
    pub fn from_rows(n: usize, w: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositiveN);
        }
        check_len("w", &w, n * n)?;
        Ok(GridSolution { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self, i: usize, j: usize) -> &S {
        &self.w[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.w[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn values(&self) -> &[S] {
        &self.w
    }

    /// Largest [`Scalar::deviation`] of any cell from `reference`.
    pub fn max_deviation(&self, reference: &GridSolution<S>) -> Result<f64> {
        if self.n != reference.n {
            return Err(Error::ShapeMismatch {
                expected: reference.n,
                found: self.n,
            });
        }
        Ok(self
            .w
            .iter()
            .zip(&reference.w)
            .map(|(x, y)| x.deviation(y))
            .fold(0.0, f64::max))
    }
}

/// Value of `w[i][j]` with the boundary rows/columns substituted.
#[inline]
pub(crate) fn north<'a, S: Scalar>(p: &'a RecurrenceProblem<S>, s: &'a GridSolution<S>, i: usize, j: usize) -> &'a S {
    if i == 1 {
        p.c0j(j)
    } else {
        s.w(i - 1, j)
    }
}

#[inline]
pub(crate) fn west<'a, S: Scalar>(p: &'a RecurrenceProblem<S>, s: &'a GridSolution<S>, i: usize, j: usize) -> &'a S {
    if j == 1 {
        p.ci0(i)
    } else {
        s.w(i, j - 1)
    }
}

/// Row-major sequential evaluation. Every other solver is checked against this.
pub fn naive_solve<S: Scalar>(p: &RecurrenceProblem<S>) -> Result<GridSolution<S>> {
    p.validate()?;
    let n = p.n();
    let mut s = GridSolution::zeros(n)?;
    for i in 1..=n {
        for j in 1..=n {
            let v = p.cell_value(i, j, north(p, &s, i, j), west(p, &s, i, j));
            s.set(i, j, v);
        }
    }
    Ok(s)
}

/// Largest pointwise defect `|w - a*w_north - b*w_west - c|` over the grid.
pub fn residual<S: Scalar>(p: &RecurrenceProblem<S>, s: &GridSolution<S>) -> Result<S> {
    p.validate()?;
    if p.n() != s.n() {
        return Err(Error::ShapeMismatch {
            expected: p.n(),
            found: s.n(),
        });
    }
    let n = p.n();
    let mut worst = S::zero();
    for i in 1..=n {
        for j in 1..=n {
            let expected = p.cell_value(i, j, north(p, s, i, j), west(p, s, i, j));
            let defect = (s.w(i, j).clone() - expected).abs();
            if defect > worst {
                worst = defect;
            }
        }
    }
    Ok(worst)
}
