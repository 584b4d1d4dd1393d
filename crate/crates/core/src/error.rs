use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: u64 },
    #[error("moduli {m1} and {m2} are not coprime")]
    NotCoprime { m1: u64, m2: u64 },
    #[error("invalid primes: {0}")]
    InvalidPrimes(String),
    #[error("index {index} out of range [0, {bound})")]
    OutOfRange { index: u64, bound: u64 },
    #[error("bad mirror prime {t}: {reason}")]
    BadMirrorPrime { t: u64, reason: &'static str },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    TooLarge { degree: u64, cap: u64 },
    #[error("division left a nonzero remainder")]
    InexactDivision,
    #[error("semigroup generators {0:?} are not coprime")]
    NotNumerical(Vec<u64>),
    #[error("search exhausted below {limit}")]
    SearchExhausted { limit: u64 },
    #[error("64-bit overflow")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
