use thiserror::Error;

/// Failure to parse one of the canonical text forms.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("not a golden-ring literal: {0:?}")]
    Golden(String),
    #[error("malformed record: {0}")]
    Record(String),
}

#[derive(Debug, Error)]
pub enum QcError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("reflection axis is zero")]
    ZeroAxis,
    #[error("degenerate window: {0}")]
    DegenerateWindow(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("point not in the model set: {0}")]
    NotInModelSet(String),
    #[error("symmetry hypothesis failed: {0}")]
    HypothesisFailure(String),
    #[error("closure certificate failed: {0}")]
    Closure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("corrupt data: {0}")]
    Data(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = QcError> = std::result::Result<T, E>;
