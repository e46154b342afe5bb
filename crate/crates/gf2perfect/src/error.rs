use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("modulus must have degree >= 1, got {0}")]
    InvalidModulus(String),

    #[error("operation is undefined for the zero polynomial")]
    ZeroInput,

    #[error("operation requires a non-constant polynomial, got {0}")]
    ConstantInput(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("degree {degree} exceeds the divisor-enumeration oracle bound {bound}")]
    OracleBound { degree: usize, bound: usize },

    #[error("exponent must be a positive even number, got {0}")]
    InvalidExponent(u64),

    #[error("{what} {requested} exceeds the default budget {budget}; pass an explicit override to go further")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        budget: u64,
    },

    #[error("unknown lemma part {0:?}; expected one of b, c, d, e, f")]
    UnknownLemmaPart(char),

    #[error("prime cache is corrupt: {0}")]
    CacheCorrupt(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
