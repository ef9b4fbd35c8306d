use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {label} has depth {depth}, which exceeds the limit {limit}")]
    DepthExceeded { label: String, depth: usize, limit: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported case {0}; expected one of 1,2 | 1,3 | 2,2")]
    UnsupportedCase(String),

    #[error("matrix dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("negative multiplicity {mult} for {label} after cancellation")]
    NegativeMultiplicity { label: String, mult: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    /// True for errors that indicate a bug or numerical failure rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NegativeMultiplicity { .. } | Error::NoConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
