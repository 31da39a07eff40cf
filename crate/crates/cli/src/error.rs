use thiserror::Error;

/// CLI-level errors, carrying the process exit code.
///
/// Exit codes: 0 success, 1 usage, 2 validation or infeasibility,
/// 3 internal (I/O and other environment failures).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<vrpstw_core::Error> for CliError {
    fn from(e: vrpstw_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
