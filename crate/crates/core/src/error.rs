use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid side n must be at least 1")]
    NonPositiveN,
    #[error("array `{name}` has {found} entries, expected {expected}")]
    DimensionMismatch {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("diagonal {d} is outside 1..={max} for n = {n}", max = 2 * n - 1)]
    DiagonalOutOfRange { d: usize, n: usize },
    #[error("cell ({i}, {j}) is outside the {n}x{n} grid")]
    CellOutOfRange { i: usize, j: usize, n: usize },
    #[error("position {r} is past the {len} live entries of diagonal {d}")]
    PositionOutOfRange { d: usize, r: usize, len: usize },
    #[error("padding entry {r} of diagonal {d} is nonzero")]
    NonZeroPadding { d: usize, r: usize },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("schedule needs at least one position")]
    EmptySchedule,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
