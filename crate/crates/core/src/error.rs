use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("subgroup is not convex: {0}")]
    NonConvex(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("family is not strongly generating: {0}")]
    NotStronglyGenerating(String),
    #[error("not a prime ideal: {0}")]
    NotPrime(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
