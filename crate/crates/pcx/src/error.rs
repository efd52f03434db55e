use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerics(paircorr::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Data { path: PathBuf, source: paircorr::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerics(_) => 3,
            CliError::Io { .. } | CliError::Data { .. } => 4,
        }
    }
}

impl From<paircorr::Error> for CliError {
    fn from(e: paircorr::Error) -> Self {
        match e {
            // argument validation inside the library surfaces as a config error
            paircorr::Error::Domain(msg) => CliError::Config(msg.to_string()),
            other => CliError::Numerics(other),
        }
    }
}
