use thiserror::Error;

use crate::units::Dimension;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("field is singular at R = z = 0")]
    Singularity,

    #[error("dimension mismatch: expected {expected:?}, got {found:?}")]
    DimensionMismatch {
        expected: Dimension,
        found: Dimension,
    },

    #[error("unrecognized unit label `{0}`")]
    UnknownUnit(String),

    #[error("could not parse quantity `{0}`")]
    Parse(String),

    #[error(
        "Fock truncation breached: population {population:.3e} in top level of n_max = {fock_cutoff}; \
         rerun with a larger fock_cutoff"
    )]
    Truncation { population: f64, fock_cutoff: usize },

    #[error("non-physical density matrix: {0}")]
    NonPhysical(String),

    #[error("dimension mismatch between operator ({operator}) and state ({state})")]
    ShapeMismatch { operator: usize, state: usize },

    #[error("integrator failed at t = {t:.6e} s: {reason}")]
    Integration { t: f64, reason: String },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
