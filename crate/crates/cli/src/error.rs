use std::io;

use beliefkit_core::Error as CoreError;
use thiserror::Error;

/// Everything that can stop a command, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read `{path}`: {source}")]
    Read { path: String, source: io::Error },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("engines disagree: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Output(#[from] io::Error),
}

impl CliError {
    /// 1 for usage and parse problems, 2 for semantic errors, 3 for a
    /// failed cross-check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } => 1,
            CliError::Core(CoreError::EmptyInput | CoreError::Syntax { .. }) => 1,
            CliError::Core(_) | CliError::Output(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
