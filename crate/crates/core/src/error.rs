use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("point is not in the support: {0}")]
    NotInSupport(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not smooth: {0}")]
    NotSmooth(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("no valid instance after {0} attempts")]
    RetriesExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
