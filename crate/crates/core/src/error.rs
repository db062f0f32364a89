use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyzError {
    #[error("parameter error: {0}")]
    Param(String),
    #[error(
        "matrix of size {rows} x {cols} ({entries} entries) exceeds the limit of {limit} entries"
    )]
    TooLarge {
        rows: usize,
        cols: usize,
        entries: u128,
        limit: u128,
    },
    #[error("no regular pair found after {0} attempts")]
    NoRegularPair(usize),
    #[error("hilbert function mismatch: expected {expected:?}, found {found:?}")]
    Hilbert {
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, SyzError>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(SyzError::Param(msg.into()))
}
