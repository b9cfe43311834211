use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed rewrite rule: {0}")]
    BadRule(String),
}

pub type Result<T> = std::result::Result<T, Error>;
