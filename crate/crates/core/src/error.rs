use thiserror::Error;

use crate::regime::CouplingRegime;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numerical singularity: {0}")]
    NumericalSingularity(String),

    #[error("resonance required: omega_s ({omega_s}) must equal omega_e ({omega_e})")]
    ResonanceRequired { omega_e: f64, omega_s: f64 },

    #[error("regime mismatch: expected {expected:?}, coupling is {found:?}")]
    RegimeMismatch {
        expected: CouplingRegime,
        found: CouplingRegime,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("expected exactly 2 transmission dips, found {found}")]
    CountMismatch { found: usize },

    #[error("at grid node {index}: {source}")]
    AtNode {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NumericalSingularity(_) | Error::CountMismatch { .. } => true,
            Error::AtNode { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    pub(crate) fn at_node(index: usize, source: Error) -> Self {
        Error::AtNode {
            index,
            source: Box::new(source),
        }
    }
}
