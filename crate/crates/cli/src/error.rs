use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Scale(sylow2_core::Error),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error(transparent)]
    Core(sylow2_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Json { .. } => 2,
            CliError::Scale(_) => 3,
            CliError::VerifyFailed(_) | CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<sylow2_core::Error> for CliError {
    fn from(e: sylow2_core::Error) -> Self {
        use sylow2_core::Error as E;
        match e {
            E::ScaleGuard { .. } | E::RankOutOfRange { .. } => CliError::Scale(e),
            E::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
