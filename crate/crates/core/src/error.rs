use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("crossing cap exceeded: {crossings} crossings > cap {cap}")]
    CapExceeded { crossings: usize, cap: usize },
    #[error("move does not match site: {0}")]
    MoveMismatch(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, KnotError>;
