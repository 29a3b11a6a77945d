use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An exponent exceeded the supported range, or a result was not finite.
    #[error("range error: {0}")]
    Range(String),
    /// Root finding was given a bracket without a sign change.
    #[error("bracket [{low}, {high}] does not contain a sign change")]
    Bracket { low: f64, high: f64 },
    /// The defining function produced a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// The requested critical temperature does not exist for these parameters.
    #[error("no transition: {0}")]
    NoTransition(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
