use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("{q} is not a power of the characteristic {p}")]
    NotFrobeniusPower { q: u64, p: u64 },
    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ideal is not primary to the homogeneous maximal ideal")]
    NotMPrimary,
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid test element strategy: {0}")]
    InvalidStrategy(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
