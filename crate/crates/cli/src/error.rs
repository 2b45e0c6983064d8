use std::process::ExitCode;

use linematch::reduction::{ReductionError, ReplayError};
use linematch::CountError;
use thiserror::Error;

/// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
/// 3 resource cap.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
        })
    }

    pub fn usage(e: impl ToString) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub const CAP_HINT: &str =
    "raise --width-cap (or LINEMATCH_WIDTH_CAP), pick another --algo, or pass --force";

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::BadOrder { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Cap(format!("{e}; {CAP_HINT}")),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Instance(_) | ReductionError::Preprocess(_) => {
                CliError::Usage(e.to_string())
            }
            ReductionError::Count(c) => c.into(),
            _ => CliError::Mismatch(e.to_string()),
        }
    }
}

impl From<ReplayError> for CliError {
    fn from(e: ReplayError) -> Self {
        match e {
            ReplayError::Counter(c) => c.into(),
            _ => CliError::Mismatch(format!("trace rejected: {e}")),
        }
    }
}
