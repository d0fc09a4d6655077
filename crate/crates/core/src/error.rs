use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra engine.
///
/// Every failure mode that the engine can detect is reported explicitly;
/// nothing is resolved silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different constant fields.
    FieldMismatch,
    /// A characteristic or degree argument is not prime.
    NotPrime(u64),
    /// Division by zero (zero polynomial, zero field element).
    DivisionByZero,
    /// The divisor of zero was requested.
    UndefinedDivisor,
    /// The input is valid but outside what the engine can compute exactly.
    Unsupported(String),
    /// A function was evaluated outside its domain (e.g. at a pole).
    Domain(String),
    /// A documented precondition was violated by the caller.
    Precondition(String),
    /// A valuation could not be decided from the leading monomials.
    Ambiguous(String),
    /// Adjoining a root of degree equal to the characteristic.
    Inseparable { q: u64 },
    /// The radicand is already a q-th power in the tower.
    AlreadyPower { q: u64 },
    /// A self-check failed. Always a bug in the engine.
    Internal(String),
    /// Malformed input data.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "operands belong to different constant fields"),
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::UndefinedDivisor => write!(f, "the divisor of 0 is undefined"),
            Error::Unsupported(m) => write!(f, "unsupported input: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Ambiguous(m) => write!(f, "valuation ambiguity: {m}"),
            Error::Inseparable { q } => {
                write!(f, "q = {q} equals the characteristic (inseparable extension)")
            }
            Error::AlreadyPower { q } => write!(f, "radicand is already a {q}-th power"),
            Error::Internal(m) => write!(f, "internal self-check failed: {m}"),
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
