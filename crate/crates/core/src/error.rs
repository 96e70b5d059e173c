use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classes of failure, used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or semantically invalid input.
    Input,
    /// A configured budget or cap was exhausted before an answer was certified.
    Resource,
    /// A precondition of an algorithm does not hold for the given data.
    Precondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime or zero")]
    InvalidCharacteristic(u64),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("undeclared variable `{name}` at offset {offset}")]
    UndeclaredVariable { name: String, offset: usize },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent at offset {offset} is not a nonnegative integer literal")]
    BadExponent { offset: usize },
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("variable index {0} out of range")]
    UnknownVariable(usize),
    #[error("resource limit reached: {what} (limit {limit})")]
    Resource { what: String, limit: usize },
    #[error("ideal is not m-primary")]
    NotMPrimary,
    #[error("quotient is infinite-dimensional")]
    InfiniteQuotient,
    #[error("the ideal is the unit ideal (zero ring)")]
    UnitIdeal,
    #[error("colon by the zero ideal")]
    ZeroIdeal,
    #[error("Hilbert table did not stabilize within cap {cap}")]
    NotStabilized { cap: usize },
    #[error("no reduction found up to cap {cap}")]
    CapExceeded { cap: usize },
    #[error("generator {index} of J is not contained in I")]
    NotContained { index: usize },
    #[error("sequence has length {found}, expected {expected}")]
    SequenceLength { expected: usize, found: usize },
    #[error("sequence element {index} is not in the ideal")]
    ElementOutsideIdeal { index: usize },
    #[error("generator {index} is not a monomial")]
    NonMonomial { index: usize },
    #[error("operation requires a polynomial ring without quotient relations")]
    QuotientPresent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("no superficial element certified after {attempts} draws (last failure at n = {failed_at})")]
    SuperficialSearchFailed { attempts: usize, failed_at: usize },
    #[error("inconsistent certificates: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Problem(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            InvalidCharacteristic(_)
            | DuplicateVariable(_)
            | InvalidVariableName(_)
            | UndeclaredVariable { .. }
            | Syntax { .. }
            | BadExponent { .. }
            | UnknownVariable(_)
            | UnknownTheorem(_)
            | Problem(_) => ErrorClass::Input,
            Resource { .. } | NotStabilized { .. } | CapExceeded { .. } => ErrorClass::Resource,
            _ => ErrorClass::Precondition,
        }
    }

    pub(crate) fn resource(what: impl Into<String>, limit: usize) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
        }
    }
}
