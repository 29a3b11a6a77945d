use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Compute(#[from] xxring::Error),
    #[error("malformed data: {0}")]
    Format(String),
}

impl CliError {
    /// 1 computation failure, 2 usage, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Format(_) => 3,
            CliError::Compute(e) => match e {
                xxring::Error::InvalidArgument(_) | xxring::Error::Range(_) | xxring::Error::NoTransition(_) => 2,
                xxring::Error::Bracket { .. } | xxring::Error::Evaluation(_) => 1,
            },
        }
    }
}
