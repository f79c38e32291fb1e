use thiserror::Error;

/// Errors raised by the exact and numeric engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a Lie algebra must have positive dimension")]
    EmptyAlgebra,

    #[error("basis name `{0}` is used more than once")]
    DuplicateBasisName(String),

    #[error("structure constant index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid Lie algebra: Jacobi identity fails at {violations} triple(s)")]
    InvalidAlgebra { violations: usize },

    #[error("subspace is not an ideal: [{}, v] escapes it", .basis_index)]
    NotAnIdeal { basis_index: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimension {0} exceeds the supported maximum of 64")]
    TooLarge(usize),

    #[error("non-finite entry in floating-point input")]
    NonFinite,

    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
