//! Expected values frozen from an independent brute-force oracle.
//!
//! Each constant below was computed ahead of time by a standalone program
//! using only textbook routes (real-symmetric Jacobi diagonalization of the
//! explicitly expanded 4×4 matrices, high-order Gauss–Legendre quadrature of
//! the scalar integrands) and then frozen here. The `oracle_freeze`
//! integration test recomputes every one of them through this crate's own,
//! structurally different code paths and checks agreement, so a regression on
//! either side trips the suite.

/// Minimal eigenvalue of the partially transposed optimal-machine output at
/// α = 0. Equals ½(sin²θ − √(cos⁴θ + sin⁴θ)) for the machine angle θ.
pub const PPT_OUTPUT_MIN_EIG_ALPHA_0: f64 = -0.446675740950830;

/// Same witness at α = 1. Equals ½(cos²θ − √(cos⁴θ + sin⁴θ)).
pub const PPT_OUTPUT_MIN_EIG_ALPHA_1: f64 = -0.000772834728024;

/// Single-qubit entropy of the optimal-machine output at α = 0, in units of
/// ln 2: S(diag(sin²θ + cos²θ/2, cos²θ/2)) / ln 2.
pub const OUTPUT_SINGLE_QUBIT_ENTROPY_RATIO_ALPHA_0: f64 = 0.997887948831918;

/// Four-angle average fidelity of the measure-and-prepare strategy, with the
/// negative-outcome branch carrying the positive branch's normalization
/// constant. Equals the closed form 54 + 112 ln²2 − 154.5 ln 2.
pub const MEASUREMENT_AVG_FIDELITY: f64 = 0.719498162327010;

/// The same average with every branch strictly unit-normalized (the
/// trace-preserving channel convention). Equals 55 + 112 ln²2 − 156 ln 2.
pub const MEASUREMENT_AVG_FIDELITY_UNIT_TRACE: f64 = 0.679777391487092;

/// Bures distance between the optimal-machine output and its pure target,
/// √(2 − 2√F) at F = (9 + 3√2)/14; constant over inputs.
pub const BURES_OPTIMAL_OUTPUT: f64 = 0.234199066035258;

/// Hilbert–Schmidt distance between the optimal-machine output and its pure
/// target at α ∈ {0, 1} (the two endpoints coincide by symmetry).
pub const HS_OPTIMAL_OUTPUT_ENDPOINTS: f64 = 0.076504843704676;

/// Hilbert–Schmidt distance of the same pair at α² = 1/2, where the input
/// dependence is largest.
pub const HS_OPTIMAL_OUTPUT_BALANCED: f64 = 0.235712412814351;
