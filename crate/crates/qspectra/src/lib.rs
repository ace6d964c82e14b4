//! File formats, generators, the property-suite runner and the command-line
//! front end for `qspectra-core`.

pub mod cli;
pub mod fnspec;
pub mod json;
pub mod random;
pub mod verify;

use qspectra_core::Error;

/// Failures surfaced by the command line, each with a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0} properties failed")]
    VerifyFailed(usize),
}

impl CliError {
    /// 2 input, 3 numeric, 4 domain, 5 conditioning, 1 failed verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) | CliError::Dimension(_) => 2,
            CliError::VerifyFailed(_) => 1,
            CliError::Core(e) => match e {
                Error::Dimension { .. } => 2,
                Error::Numeric(_) | Error::Consistency(_) | Error::Divergence(_) => 3,
                Error::Domain(_) | Error::Singular { .. } | Error::Unsupported(_) => 4,
                Error::Conditioning(_) => 5,
            },
        }
    }
}
