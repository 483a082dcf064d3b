//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar argument is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A vector or matrix has the wrong length for the object it is paired with.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A coordinate index does not address the object.
    #[error("index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    /// An atom of a spectral measure is not on the unit sphere.
    #[error("atom {index} is off the unit sphere: |point| = {norm}")]
    OffSphere { index: usize, norm: f64 },

    /// A spectral measure is not symmetric where symmetry is required.
    #[error("measure is not symmetric: atom {index} has no mirrored twin of equal weight")]
    Asymmetric { index: usize },

    /// A quadrature or series acceleration did not reach its target accuracy.
    #[error("numerical failure in {context}: residual {residual:e}")]
    Numerical { context: String, residual: f64 },

    /// An internal consistency check failed; the input data is corrupted.
    #[error("integrity check failed: {0}")]
    Integrity(String),

    /// A Monte-Carlo estimate cannot be formed from the given samples.
    #[error("degenerate sample set: {0}")]
    Degenerate(String),

    /// An operation needs an increment law the model does not carry.
    #[error("model carries no increment law; path synthesis is unavailable")]
    MissingIncrements,

    /// Malformed input data (files, schemas, coefficient strings).
    #[error("invalid input: {0}")]
    Input(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
