//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {got} is invalid (minimum {min})")]
    InvalidDimension { got: usize, min: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("ensemble must contain at least one unitary")]
    EmptyEnsemble,

    #[error("inconsistent ensemble: {0}")]
    MixedEnsemble(String),

    #[error("operation requires the complex field ({0})")]
    UnsupportedField(&'static str),

    #[error("affine system is infeasible: relative residual {residual:.3e} after projection")]
    Infeasible { residual: f64 },

    #[error("eigendecomposition failed to converge")]
    EigenFailure,

    #[error("measurement has non-real residue {imag:.3e} above tolerance")]
    NonRealMeasurement { imag: f64 },

    #[error("lambda {0} outside [0, 1]")]
    InvalidLambda(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
