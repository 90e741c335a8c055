use thiserror::Error;

use crate::perm::Permutation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(usize),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("a code must contain at least one permutation")]
    EmptyCode,

    #[error("[{first}] and [{second}] are at distance {distance}, below the minimum distance {required}")]
    DistanceViolation { first: Permutation, second: Permutation, distance: usize, required: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("brute-force oracle refuses degree {degree} (cap is {cap})")]
    OracleTooLarge { degree: usize, cap: usize },

    #[error("malformed code graph: {0}")]
    Structural(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("resource cap exceeded after {nodes} nodes and {seconds:.1}s ({classes} classes found so far)")]
    ResourceCap { nodes: u64, seconds: f64, classes: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
