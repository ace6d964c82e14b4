use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every stage of the pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A linear system (or pseudo-resolvent) is singular or too close to it.
    #[error("singular: {reason} (distance {distance:.3e})")]
    Singular { reason: String, distance: f64 },

    /// An iterative method did not converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Computed data violates a structural identity beyond tolerance.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Spectral clusters are too close to be separated reliably.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// A series was requested outside its disc of convergence.
    #[error("divergence: {0}")]
    Divergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn singular(reason: impl Into<String>, distance: f64) -> Self {
        Error::Singular {
            reason: reason.into(),
            distance,
        }
    }
}
