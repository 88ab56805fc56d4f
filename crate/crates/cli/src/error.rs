use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invalid input: {0}")]
    Core(#[from] negmom::Error),
    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 3 for output failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Core(_) => 2,
            CliError::Output { .. } => 3,
            CliError::ChecksFailed(_) | CliError::Json(_) => 1,
        }
    }

    pub(crate) fn stdout(source: std::io::Error) -> Self {
        CliError::Output {
            path: PathBuf::from("<stdout>"),
            source,
        }
    }
}
