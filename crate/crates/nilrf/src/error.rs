use std::path::PathBuf;

use nilrf_core::Error as CoreError;

/// Errors surfaced by the command line, each tied to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Resource(String),
    #[error("report rejected: {0}")]
    Rejected(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Validation(_) | CliError::Rejected(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    pub(crate) fn parse(path: &std::path::Path, e: &serde_json::Error) -> Self {
        CliError::Parse { path: path.to_path_buf(), line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NotPrime(_) | CoreError::InvalidInput(_) => CliError::Usage(e.to_string()),
            CoreError::Dimension(_) | CoreError::Validation(_) => CliError::Validation(e.to_string()),
            CoreError::ResourceLimit(_) => CliError::Resource(e.to_string()),
            CoreError::Internal(_) => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
