//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by fitting, degradation, metric, and file operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is too short for the requested operation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A zero pivot was encountered while eliminating a tridiagonal system.
    #[error("singular tridiagonal system: zero pivot at row {row}")]
    SingularSystem { row: usize },

    /// Two array arguments do not share the required shape.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A file failed structural validation; the message names the field.
    #[error("invalid file: {0}")]
    InvalidFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn insufficient(msg: impl Into<String>) -> Self {
        Error::InsufficientData(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }

    pub(crate) fn file(msg: impl Into<String>) -> Self {
        Error::InvalidFile(msg.into())
    }
}
