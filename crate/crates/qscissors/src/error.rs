//! Error type shared across the crate, with the CLI exit-code mapping.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A config key is missing, malformed, or violates an invariant.
    #[error("configuration error: {key}: {message}")]
    Config { key: String, message: String },

    /// Occupation numbers outside the active cutoff.
    #[error("fock index ({n},{m},{l}) out of range for cutoff {cutoff}")]
    IndexOutOfRange {
        n: usize,
        m: usize,
        l: usize,
        cutoff: usize,
    },

    /// Flat basis index outside [0, d^3).
    #[error("flat index {index} out of range for dimension {dim}")]
    FlatIndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not Hermitian: max |H - H'| = {max_dev:.3e}")]
    NotHermitian { max_dev: f64 },

    /// Eigendecomposition failed to reproduce the input matrix.
    #[error("eigendecomposition residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    BadDecomposition { residual: f64, tolerance: f64 },

    /// The integrator's accuracy sentinel tripped.
    #[error("norm drift {drift:.3e} at t = {t} exceeds 1e-6; reduce the step size")]
    NormDrift { t: f64, drift: f64 },

    #[error("trajectories are sampled on different time grids")]
    GridMismatch,

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 1 configuration, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 1,
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}
