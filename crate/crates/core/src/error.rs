use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial has no real root greater than 1")]
    NoRootAboveOne,

    #[error("base is not a certified Pisot number: {0}")]
    NotPisot(String),

    #[error("malformed word {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("integer words must not carry a radix point")]
    PointInIntegerWord,

    #[error("alphabets differ: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<i32>, Vec<i32>),

    #[error("state limit of {limit} exceeded while building {what}")]
    StateLimit { what: &'static str, limit: usize },

    #[error("iteration limit of {0} reached")]
    IterationLimit(usize),

    #[error("expansion did not terminate within {0} digits")]
    NonTerminating(usize),

    #[error("no witness for B = {0} found up to length {1}")]
    NoWitness(i32, usize),

    #[error("value outside the admissible domain: {0}")]
    Domain(String),

    #[error("word {0} is not of minimal weight")]
    NotMinimal(String),

    #[error("search horizon too large: {0}")]
    Horizon(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvalidPolynomial(_) | Error::PointInIntegerWord => 2,
            Error::Invariant(_) | Error::IterationLimit(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
