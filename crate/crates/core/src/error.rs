use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A series hit its term cap before its tail fell below tolerance.
    #[error("{op}: no convergence after {terms} terms")]
    Convergence { op: &'static str, terms: usize },

    /// A division by (or log of) zero inside jet arithmetic or a pole.
    #[error("{op}: singularity: {detail}")]
    Singularity { op: &'static str, detail: String },

    /// Two jets with different base points or orders were combined.
    #[error("jet mismatch: {0}")]
    JetMismatch(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn singularity(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Singularity {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
