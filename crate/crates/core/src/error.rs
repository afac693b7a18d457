use thiserror::Error;

/// Errors raised by the geometric primitives and the safe-point solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is empty")]
    Empty,

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("numerical failure: {0}")]
    Numerical(&'static str),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("brute-force limit exceeded: n = {got} > {limit} in dimension {dim}")]
    TooLarge { dim: usize, limit: usize, got: usize },
}
