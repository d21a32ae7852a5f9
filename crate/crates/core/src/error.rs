use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Capacity errors are never silent: any enumeration or search that would
/// exceed a configured limit reports the limit it hit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group is not transitive")]
    NotTransitive,

    #[error("rank {found} where rank {expected} is required")]
    RankMismatch { expected: usize, found: usize },

    #[error("capacity exceeded: {what} exceeds the limit of {limit}")]
    Capacity { what: String, limit: u128 },

    #[error("element is not a member of the group")]
    NotMember,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("outside the hypothesis of {0}")]
    Hypothesis(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub fn capacity(what: impl Into<String>, limit: impl Into<u128>) -> Self {
        Error::Capacity {
            what: what.into(),
            limit: limit.into(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
