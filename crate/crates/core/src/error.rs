use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("element {value} is outside the field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("polynomial {modulus:#b} is not irreducible of degree {degree}")]
    ReducibleModulus { modulus: u32, degree: u32 },
    #[error("unsupported extension degree {0} (expected 1..=16)")]
    UnsupportedDegree(u32),
    #[error("{what} needs {needed} units of work but the budget is {budget}")]
    SizeOverBudget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("symbol {symbol} at position {position} is not below q = {q}")]
    SymbolOutOfRange { symbol: u32, position: usize, q: u32 },
    #[error("column index {index} out of range for {len} codewords")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed generator file: {0}")]
    Parse(String),
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn over_budget(what: &'static str, needed: u128, budget: u128) -> Self {
        Error::SizeOverBudget {
            what,
            needed,
            budget,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
