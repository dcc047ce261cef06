use thiserror::Error;

use crate::search::SearchStats;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration cap exceeded: {what} has {size} elements, cap is {cap}")]
    CapExceeded { what: &'static str, size: String, cap: u64 },

    #[error("degree {degree} exceeds the canoniser cap of {cap}; use the strong approximator instead")]
    CanonCapExceeded { degree: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("node limit of {limit} exceeded after {} nodes", .stats.nodes)]
    NodeLimit { limit: u64, stats: SearchStats },

    #[error("left-hand stack sequence diverged at length {length}")]
    LeftSequence { length: usize },

    #[error("generator retries exhausted after {attempts} attempts")]
    RetryExhausted { attempts: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
