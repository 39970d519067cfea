use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision must be at least 1, got {0}")]
    InvalidPrecision(u32),
    #[error("square-bracket index must be a positive odd integer, got {0}")]
    InvalidBracketIndex(i64),
    #[error("Eisenstein weight must be a positive even integer, got {0}")]
    InvalidEisensteinWeight(i64),
    #[error("state is not homogeneous")]
    Inhomogeneous,
    #[error("operation is undefined on the zero state")]
    ZeroState,
    #[error("q-series offsets differ: {0} vs {1}")]
    OffsetMismatch(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
