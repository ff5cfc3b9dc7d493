use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("face index {index} out of range for a {dim}-simplex")]
    FaceIndex { index: usize, dim: usize },
    #[error("dimension {requested} is beyond truncation {max_dim}")]
    BeyondTruncation { requested: usize, max_dim: usize },
    #[error("truncation insufficient: dimension {needed} required, {have} available")]
    TruncationInsufficient { needed: usize, have: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("invalid simplicial set: {0}")]
    Invalid(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
