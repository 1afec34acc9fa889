//! Failure classes and their process exit codes.

use thiserror::Error;

/// Command failure.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or inconsistent configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// A computation failed on a valid configuration.
    #[error("numerical failure: {0}")]
    Numerical(#[from] otm_core::Error),
    /// Reading or writing a file failed.
    #[error("i/o failure: {0}")]
    Io(String),
}

impl CliError {
    /// Exit status reported by the binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}
