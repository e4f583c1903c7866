use thiserror::Error;

/// Errors produced by the matrix, angle and pseudoinverse routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("data length {len} does not match {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, len: usize },

    #[error("non-finite value at index ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("non-finite phase at position {index}")]
    NonFinitePhase { index: usize },

    #[error("angle vector must contain at least one phase")]
    EmptyAngleVector,

    #[error("zero entry at index ({row}, {col}) has no Hadamard inverse")]
    ZeroEntry { row: usize, col: usize },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is singular: pivot magnitude {pivot:e} <= threshold {threshold:e}")]
    Singular { pivot: f64, threshold: f64 },

    #[error("matrix is rank deficient: Gram pivot magnitude {pivot:e} <= threshold {threshold:e}")]
    RankDeficient { pivot: f64, threshold: f64 },

    #[error("index ({row}, {col}) out of range for {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("adjugate oracle limited to n <= {cap}, got n = {n}")]
    AdjugateCap { n: usize, cap: usize },

    #[error("invalid tolerance {name} = {value}: must be finite and strictly positive")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),
}

impl Error {
    /// True for singular and rank-deficient inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. } | Error::RankDeficient { .. } | Error::Consistency(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
