//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the geometry library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Pivoted inversion met a pivot below the determinant tolerance, or the
    /// multiply-back residual of the computed inverse exceeded its bound.
    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    /// A scalar-field description failed validation.
    #[error("malformed field: {0}")]
    MalformedField(String),

    /// A configuration file or flag set could not be parsed.
    #[error("parse error at line {line}, key `{key}`: {msg}")]
    Parse {
        line: usize,
        key: String,
        msg: String,
    },

    /// Evaluation requested outside the guarded domain (G11 <= eps, h11 <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The fundamental tensor produced by a Lagrangian could not be inverted.
    #[error("non-invertible fundamental tensor: {0}")]
    NonInvertibleMetric(String),

    /// An extremal trajectory left the guarded domain; carries the last valid time.
    #[error("trajectory left the metric domain; last valid t = {last_t}")]
    DomainExit { last_t: f64 },

    /// The Einstein constant must be nonzero.
    #[error("invalid constant: {0}")]
    InvalidConstant(String),

    /// The congruence transform failed to reproduce the Minkowski signature.
    #[error("signature mismatch: max deviation {max_dev} from diag(1,-1,-1,-1)")]
    SignatureMismatch { max_dev: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
