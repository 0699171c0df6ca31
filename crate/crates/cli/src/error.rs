use std::io;
use std::path::PathBuf;

use blockage::BlockageError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Clap(#[from] clap::Error),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(String),

    #[error(transparent)]
    Model(#[from] BlockageError),

    #[error("validation failed: {}", failed.join(", "))]
    Validation { failed: Vec<String> },
}

impl CliError {
    /// 0 for help/version, 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
