use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("matrix is not Hermitian: |H[{row},{col}] - conj(H[{col},{row}])| = {deviation:e}")]
    NonHermitian { row: usize, col: usize, deviation: f64 },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("vector {index} has norm {norm}, expected 1")]
    NotUnitNorm { index: usize, norm: f64 },

    #[error("row {index} is zero")]
    ZeroRow { index: usize },

    #[error("system does not span the space (lower frame bound {lower_bound:e})")]
    NotSpanning { lower_bound: f64 },

    #[error("system is not a frame (lower frame bound {lower_bound:e})")]
    NotFrame { lower_bound: f64 },

    #[error("Hermitian part of C is not positive definite (minimum eigenvalue {c1:e})")]
    C1Unavailable { c1: f64 },

    #[error("matrix is singular at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

pub(crate) fn shape_mismatch(what: &str, expected: usize, found: usize) -> Error {
    Error::ShapeMismatch(format!("{what}: expected {expected}, found {found}"))
}
