use thiserror::Error;

/// Errors surfaced by the numeric core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subsystem index {index} out of range for {count} factors")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("matrix is not Hermitian within tolerance (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("projection annihilates the state (probability {probability:.3e})")]
    VanishingProbability { probability: f64 },

    #[error("quadrature order {0} too small (need at least 2 nodes per axis)")]
    QuadratureOrder(usize),

    #[error("unknown channel name `{0}`")]
    UnknownChannel(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),
}
