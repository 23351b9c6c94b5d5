//! Deterministic numerics for two-qubit entangling machines.
//!
//! The crate simulates the standard constructions that turn an unknown qubit
//! into a two-qubit entangled state — measure-and-prepare, controlled-SWAP
//! post-selection, the optimal universal symmetrization machine, and the
//! universal-NOT machine — together with the fidelity, distance, separability,
//! and no-signaling diagnostics used to compare them. Everything is dense
//! complex linear algebra over dimensions ≤ 16; all randomness is seeded and
//! reproducible.

pub mod entanglers;
pub mod error;
pub mod experiments;
pub mod frozen;
pub mod linalg;
pub mod metrics;
pub mod quad;
pub mod states;

pub use error::Error;
pub use linalg::{Complex64, ComplexMatrix, SubsystemDims};
pub use states::{BlochAngles, DensityMatrix, PureState};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Acceptance tolerance for Hermiticity checks (max-abs entry difference).
pub const TOL_HERMITIAN: f64 = 1e-10;

/// Eigenvalues above this floor are clamped to zero when a matrix is treated
/// as positive semidefinite; anything further below is rejected.
pub const TOL_PSD_FLOOR: f64 = -1e-10;

/// Eigenvalues below this signal a genuinely non-PSD input.
pub const TOL_PSD_REJECT: f64 = -1e-8;

/// Jacobi sweep convergence: off-diagonal Frobenius mass below this is done.
pub const TOL_JACOBI_OFFDIAG: f64 = 1e-14;

/// Unnormalized antisymmetrization below this norm counts as degenerate.
pub const TOL_DEGENERATE: f64 = 1e-10;

/// Post-selection or projection branches below this probability are absent.
pub const TOL_VANISHING_PROB: f64 = 1e-12;
