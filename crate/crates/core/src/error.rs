use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("divisor {0} is not a single power of pi")]
    NonMonomialDivisor(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid stratum: {0}")]
    InvalidStratum(String),

    #[error("component {component} does not exist for {stratum}")]
    InvalidComponent { stratum: String, component: String },

    #[error("no exact formula for {0}")]
    NoExactFormula(String),

    #[error("volume unavailable for sub-stratum {0}")]
    VolumeUnavailable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), reason: reason.into() }
    }
}
