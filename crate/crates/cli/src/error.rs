use std::path::PathBuf;

use thiserror::Error;

/// sysexits-style codes for failures that are not verdicts.
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CANT_CREATE: i32 = 73;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] oxtoby_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Read { .. } => EXIT_NO_INPUT,
            CliError::Write { .. } => EXIT_CANT_CREATE,
            CliError::Core(oxtoby_core::Error::LevelOutOfRange { .. }) => EXIT_USAGE,
            CliError::Core(_) => EXIT_DATA,
        }
    }
}
