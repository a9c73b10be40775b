//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u64, u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("substitution image is not a sum of distinct variables")]
    MalformedImage,
    #[error("substitution does not respect the weight filtration in this mode")]
    ModeViolation,
    #[error("weight vector degree {0} does not match degree {1}")]
    DegreeWeightMismatch(u64, u64),
    #[error("mu({0}) exceeds the variable count {1}")]
    MuTooLarge(u64, u32),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache file rejected: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
