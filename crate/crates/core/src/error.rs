use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what}: requested {requested} exceeds the cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize, requested: usize },

    #[error("not modular: the quadratic form is degenerate (radical of dimension {radical_dim})")]
    NotModular { radical_dim: usize },

    /// The cocycle has trivial diagonal everywhere but is not the coboundary
    /// of a ±1-valued 2-cochain; trivializing it needs μ4-valued cochains.
    #[error("no ±1-valued trivialization exists for this cocycle")]
    SignedWitnessUnavailable,

    /// A computed witness failed its own re-verification. Never expected.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
