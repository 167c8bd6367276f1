use std::path::PathBuf;

use gausslab_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),

    #[error("numerical domain error: {0}")]
    Numerical(#[from] CoreError),

    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Output { .. } => exit::INVALID_CONFIG,
            CliError::Numerical(_) => exit::NUMERICAL,
        }
    }
}

pub mod exit {
    pub const INVALID_CONFIG: u8 = 2;
    pub const NUMERICAL: u8 = 3;
    pub const CHECK_FAILED: u8 = 4;
}
