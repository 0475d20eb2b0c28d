use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("accuracy error: {0}")]
    Accuracy(String),
    #[error("singularity near s = {last_good_s}: {msg}")]
    Singularity { msg: String, last_good_s: f64 },
    #[error("stiffness: {0}")]
    Stiffness(String),
    #[error("insufficient range: {0}")]
    InsufficientRange(String),
    #[error("envelope too loose: {0}")]
    Envelope(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parameter(_) => "parameter",
            Error::Domain(_) => "domain",
            Error::Range(_) => "range",
            Error::Branch(_) => "branch",
            Error::NumericalBreakdown(_) => "numerical_breakdown",
            Error::Accuracy(_) => "accuracy",
            Error::Singularity { .. } => "singularity",
            Error::Stiffness(_) => "stiffness",
            Error::InsufficientRange(_) => "insufficient_range",
            Error::Envelope(_) => "envelope",
        }
    }

    /// True for errors caused by bad input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parameter(_) | Error::Domain(_) | Error::Branch(_) | Error::InsufficientRange(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
