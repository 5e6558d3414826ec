use std::fmt;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("precision underflow: {0}")]
    PrecisionUnderflow(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator list is empty or all zero")]
    EmptyGenerators,
    #[error("divisor must be nonzero")]
    ZeroDivisorInput,
    #[error("quotient is not finite: {0}")]
    InfiniteQuotient(String),
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("not a prime ideal: {0}")]
    NotPrime(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("the two primes must be distinct")]
    EqualPrimes,
    #[error("not integer-valued: {0}")]
    NotIntegerValued(String),
    #[error("premises not verified: {0}")]
    PremisesNotVerified(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn field_mismatch(a: impl fmt::Display, b: impl fmt::Display) -> Self {
        Error::FieldMismatch(a.to_string(), b.to_string())
    }

    pub(crate) fn parse_at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let upto = &src[..offset.min(src.len())];
        let line = upto.matches('\n').count() + 1;
        let column = upto.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
