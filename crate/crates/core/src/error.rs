use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group mismatch: expected {expected}, found {found}")]
    SpecMismatch { expected: String, found: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("matrix is singular (|det| <= {0:e})")]
    Singular(f64),
    #[error("integer overflow in group arithmetic")]
    Overflow,
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("relation `{0}` does not evaluate to the identity")]
    Relation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
