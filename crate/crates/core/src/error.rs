use thiserror::Error;

use crate::grid::Grid;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: Grid, right: Grid },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("expected {expected} samples, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    /// The Gram matrix is singular or too close to it to invert in double precision.
    #[error(
        "ill-conditioned Gram matrix: lambda_min = {lambda_min:e}, lambda_max = {lambda_max:e}"
    )]
    IllConditioned { lambda_min: f64, lambda_max: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("operation requires at least one atom")]
    EmptyFamily,
}
