use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("environment constraint violation: {0}")]
    Environment(String),
    #[error("unphysical initial covariance: {0}")]
    Unphysical(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] gaussdyn_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Environment(_) => 3,
            CliError::Unphysical(_) => 4,
            CliError::Numerical(_) => 5,
            CliError::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
