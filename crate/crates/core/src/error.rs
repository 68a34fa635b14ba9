use thiserror::Error;

/// Errors raised by the caterpillar spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leg count at position {index} is negative ({value})")]
    NegativeLegCount { index: usize, value: i64 },
    #[error("caterpillar specification is empty")]
    EmptySpec,
    #[error("operation needs at least {needed} spine vertices, got {got}")]
    SpecTooSmall { needed: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("H has {expected} vertices but the family has {got} graphs")]
    FamilySizeMismatch { expected: usize, got: usize },
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("no root found in [{lo}, {hi}]")]
    NoRootFound { lo: f64, hi: f64 },
    #[error("no deletion index gives a positive denominator")]
    NoValidIndex,
    #[error("graph must have at least {needed} vertices")]
    GraphTooSmall { needed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
