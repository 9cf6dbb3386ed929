use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or out-of-range configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A validation run found the detection-error bound violated, or the
    /// planner disagreeing with the grid oracle.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(field: &str, reason: impl std::fmt::Display) -> Self {
        CliError::Config(format!("`{field}`: {reason}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) | CliError::Io(_) => ExitCode::from(2),
            CliError::Numerical(_) | CliError::Validation(_) => ExitCode::from(3),
        }
    }
}

impl From<uavcovert_core::Error> for CliError {
    fn from(e: uavcovert_core::Error) -> Self {
        match e {
            uavcovert_core::Error::InvalidParameter { .. } => CliError::Config(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}
