use std::io;
use std::path::PathBuf;

use design_forge::DesignError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[source] io::Error),
    #[error("{}:{line}: {source}", path.display())]
    Record {
        path: PathBuf,
        line: usize,
        source: serde_json::Error,
    },
    #[error("{}: {source}", path.display())]
    Table { path: PathBuf, source: csv::Error },
    #[error("{}: {reason}", path.display())]
    Malformed { path: PathBuf, reason: String },
}

impl CliError {
    /// 1 for verification-class failures, 2 for bad input, 3 for budget.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Design(e) => match e {
                DesignError::Resource { .. } => 3,
                DesignError::Exponent { .. }
                | DesignError::Range { .. }
                | DesignError::InvalidShift
                | DesignError::Argument(_) => 2,
                _ => 1,
            },
            CliError::Output(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
