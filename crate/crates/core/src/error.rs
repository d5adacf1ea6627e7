use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("input too large: {what} = {value} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("prime {0} is too small; primes 2 and 3 are excluded")]
    PrimeTooSmall(u64),

    #[error("discriminant polynomial is identically zero")]
    DeltaIdenticallyZero,

    #[error("j-invariant of the family is constant")]
    ConstantJInvariant,

    #[error("supersingular trace a_p = 0 has no Frobenius field")]
    SupersingularExcluded,

    #[error("a_p^2 - 4p = {0} is not negative")]
    NotImaginary(i64),

    #[error("trace {trace} at p = {p} violates the Hasse bound")]
    HasseViolation { p: u64, trace: i64 },

    #[error("sum-swap mismatch: direct total {direct} != swapped total {swapped}")]
    SumSwapMismatch { direct: u64, swapped: u64 },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
