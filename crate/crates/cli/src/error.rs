use qsl2_core::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    /// `pos` is a 0-based byte offset into the input.
    #[error("syntax error at column {}: {msg}", pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Domain(msg.into()))
}
