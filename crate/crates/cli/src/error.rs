use std::path::PathBuf;

use lipaffine::{DomainError, EnhanceError, PnmError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: PnmError },
    #[error("{0}")]
    ConstantImage(EnhanceError),
    #[error("{0}")]
    MissingParam(String),
    #[error("{0}")]
    InvalidArg(String),
}

impl CliError {
    /// Stable machine-greppable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "E_USAGE",
            CliError::Io { .. } => "E_IO",
            CliError::Parse { .. } => "E_PARSE",
            CliError::ConstantImage(_) => "E_CONSTANT_IMAGE",
            CliError::MissingParam(_) => "E_MISSING_PARAM",
            CliError::InvalidArg(_) => "E_INVALID_ARG",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse { .. } => 4,
            CliError::ConstantImage(_) => 5,
            CliError::MissingParam(_) | CliError::InvalidArg(_) => 6,
        }
    }
}

impl From<EnhanceError> for CliError {
    fn from(e: EnhanceError) -> Self {
        match e {
            EnhanceError::ConstantImage { .. } => CliError::ConstantImage(e),
            other => CliError::InvalidArg(other.to_string()),
        }
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        CliError::InvalidArg(e.to_string())
    }
}
