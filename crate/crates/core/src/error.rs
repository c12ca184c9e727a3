use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("index set over universe {found} used with a matrix of order {expected}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("index set must be nonempty")]
    EmptySubset,

    #[error("index set must be a proper subset of the full index set")]
    NotProperSubset,

    #[error("matrix is not diagonally dominant")]
    NotDiagonallyDominant,

    #[error("matrix is an H-matrix; no non-H witness exists")]
    IsHMatrix,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computed result contradicts the claim it was derived from, e.g. a
    /// scaling vector for a matrix believed to be an H-matrix has a
    /// nonpositive entry.
    #[error("inconsistency: {0}")]
    Inconsistent(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
