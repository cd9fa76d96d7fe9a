use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is a zero of the denominator")]
    Pole,
    #[error("denominator vanishes at 0, not a power series")]
    NotPowerSeries,
    #[error("guardrail exceeded: {what} needs {needed}, limit is {limit}")]
    GuardrailExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("roots cannot be separated at {bits} bits")]
    IndistinguishableRoots { bits: u32 },
    #[error("precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported parameter combination: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
