use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({re}, {im}) is not inside the unit disk (1 - |z| must be at least 1e-14)")]
    OutsideDisk { re: f64, im: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("duplicate point ({re}, {im})")]
    DuplicatePoint { re: f64, im: f64 },

    #[error("measure has no atoms")]
    EmptyMeasure,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("kernel Gram matrix is numerically singular at n = {n} (condition {condition:e})")]
    NumericallySingular { n: usize, condition: f64 },

    #[error("ill-conditioned interpolation: {0}")]
    IllConditioned(String),

    #[error("malformed input: {0}")]
    Format(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
