use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error(transparent)]
    Core(#[from] zomega::Error),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("budget override `{0}` is not of the form op=n")]
    Budget(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
