use thiserror::Error;

use crate::matrix::Vector;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the library. Matrix indices are zero-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row")]
    Empty,

    #[error("entry ({row}, {col}) = {value} is not a finite nonnegative real")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("vector entry {index} = {value} is not a finite nonnegative real")]
    InvalidVectorEntry { index: usize, value: f64 },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("scalar {0} is negative or not finite")]
    NegativeScalar(f64),

    #[error("invalid numeric policy: {0}")]
    InvalidPolicy(String),

    #[error("dimension {n} exceeds the jump enumeration limit {limit}; use the karp method")]
    JumpLimitExceeded { n: usize, limit: usize },

    #[error("power iteration did not become periodic within {iterations} iterations")]
    NoConvergence { iterations: usize, last: Vector },

    #[error("the max eigenvalue is zero; no eigenvector is defined")]
    ZeroEigenvalue,

    #[error("no critical node supplied")]
    NoCriticalNode,

    #[error("eigen-equation check failed at row {row}: relative residual {residual:e}")]
    EigenCheckFailed { row: usize, residual: f64 },

    #[error("entry ({row}, {col}) = {value} is not strictly positive")]
    NotPositive { row: usize, col: usize, value: f64 },

    #[error("reciprocity violated at ({row}, {col}): a_ij * a_ji = {product}")]
    Reciprocity {
        row: usize,
        col: usize,
        product: f64,
    },

    #[error("weight {index} = {value} is not strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("tau must be positive and finite, got {0}")]
    NonPositiveTau(f64),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("relative error {error} does not match mu - 1 = {expected}")]
    CertificateMismatch { error: f64, expected: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
