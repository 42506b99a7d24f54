//! Maps between grid cells `(i, j)` and anti-diagonal positions `(d, r)`.
//!
//! Diagonal `d = i + j - 1` runs over `1..=2n-1`. Within a diagonal, position
//! `r` counts from the cell with the smallest `i`: `(1, d), (2, d-1), ...` for
//! `d <= n`, and `(d+1-n, n), (d+2-n, n-1), ...` past the main anti-diagonal.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagonalIndex {
    /// Diagonal number, one-based.
    pub d: usize,
    /// Zero-based position within the diagonal.
    pub r: usize,
}

pub(crate) fn check_diagonal(d: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NonPositiveN);
    }
    if d == 0 || d > 2 * n - 1 {
        return Err(Error::DiagonalOutOfRange { d, n });
    }
    Ok(())
}

/// Number of live cells on diagonal `d` of an `n x n` grid.
pub fn diag_len(d: usize, n: usize) -> Result<usize> {
    check_diagonal(d, n)?;
    Ok(live_len(d, n))
}

#[inline]
pub(crate) fn live_len(d: usize, n: usize) -> usize {
    if d <= n {
        d
    } else {
        2 * n - d
    }
}

/// Row index `i` of the first cell on diagonal `d`.
#[inline]
pub(crate) fn first_row(d: usize, n: usize) -> usize {
    if d <= n {
        1
    } else {
        d + 1 - n
    }
}

pub fn grid_to_diag(i: usize, j: usize, n: usize) -> Result<DiagonalIndex> {
    if n == 0 {
        return Err(Error::NonPositiveN);
    }
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::CellOutOfRange { i, j, n });
    }
    let d = i + j - 1;
    Ok(DiagonalIndex {
        d,
        r: i - first_row(d, n),
    })
}

pub fn diag_to_grid(idx: DiagonalIndex, n: usize) -> Result<(usize, usize)> {
    let len = diag_len(idx.d, n)?;
    if idx.r >= len {
        return Err(Error::PositionOutOfRange {
            d: idx.d,
            r: idx.r,
            len,
        });
    }
    Ok(cell_of(idx.d, idx.r, n))
}

/// Unchecked `diag_to_grid` for callers that already validated `(d, r)`.
#[inline]
pub(crate) fn cell_of(d: usize, r: usize, n: usize) -> (usize, usize) {
    let i = first_row(d, n) + r;
    (i, d + 1 - i)
}
