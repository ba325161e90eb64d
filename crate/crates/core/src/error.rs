use thiserror::Error;

/// Errors raised by the reconstruction library.
#[derive(Debug, Error)]
pub enum FsrError {
    #[error("dimension mismatch: expected {expected_width}x{expected_height}, got {width}x{height}")]
    DimensionMismatch {
        expected_width: usize,
        expected_height: usize,
        width: usize,
        height: usize,
    },

    #[error("invalid dimensions {width}x{height}: both must be at least {min}")]
    InvalidDimensions { width: usize, height: usize, min: usize },

    #[error("sample buffer holds {got} values, expected {expected}")]
    BufferLength { expected: usize, got: usize },

    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no usable samples in reconstruction area")]
    NoUsableSamples,

    #[error("nothing to reconstruct from: the sampling mask is empty")]
    EmptyMask,

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = FsrError> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> FsrError {
    FsrError::InvalidParameter { name, reason: reason.into() }
}
