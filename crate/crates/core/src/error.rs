use thiserror::Error;

/// Errors raised by the library outside of the decoding pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("field of {size} units exceeds the table limit of {limit}")]
    TableTooLarge { size: u64, limit: u64 },
    #[error("defining polynomial rejected: {0}")]
    BadDefiningPolynomial(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("element is not in the subfield GF(q)")]
    NotInSubfield,
    #[error("symbol {symbol} out of range for GF({q})")]
    SymbolOutOfRange { symbol: u64, q: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not coprime to the modulus")]
    NotCoprime,
    #[error("polynomial has a root beta^{exponent} in the multiplicative group")]
    HasRoot { exponent: u32 },
    #[error("modulus has zero constant term")]
    ZeroConstantTerm,
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exponent {exponent} out of range 0..{modulus}")]
    OutOfRange { exponent: u64, modulus: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
