use thiserror::Error;

/// Everything that can go wrong in the numeric core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^H| = {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid temperature {0}; must be positive and finite")]
    InvalidTemperature(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("model {0} has no closed-form expression")]
    UnsupportedModel(&'static str),

    #[error("no sign change of the entanglement witness for delta = {delta}")]
    NoRoot { delta: f64 },

    #[error("z = {z} lies outside (0, 4^(-1/3))")]
    OutOfDomain { z: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
