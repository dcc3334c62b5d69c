use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] latplan::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 3 for resource caps.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(latplan::Error::OrderCapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}
