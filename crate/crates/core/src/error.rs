use alloc::string::String;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("presentation rejected: {0}")]
    Validation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
