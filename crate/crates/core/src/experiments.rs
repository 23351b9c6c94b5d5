//! Reproduction drivers: every headline constant, bound, and figure curve
//! computed from the library, with independent evaluation routes cross-checked
//! inside one deterministic report.

use crate::entanglers::{
    antisymmetric_entangler, apply_optimal_entangler, apply_unot_entangler, charlie_protocol,
    optimal_fidelity, swap_post_select, unot_ideal_target, EntanglerChannel,
};
use crate::error::Error;
use crate::linalg::{cx, Complex64, ComplexMatrix, SubsystemDims};
use crate::metrics::{bures_distance, fidelity_pure, ppt_min_eigenvalue, von_neumann_entropy};
use crate::quad::{azimuthal_nodes, gauss_legendre};
use crate::states::{
    ket_from_bloch, orthogonal_state, random_qubit, random_su2, seeded_rng, symmetrized_ideal,
    BlochAngles, PureState,
};
use crate::{frozen, Result};
use rand::Rng;

// Per-task RNG streams, split off the master seed by counter rather than by
// call order.
const STREAM_OPTIMAL: u64 = 1;
const STREAM_MEASUREMENT_MC: u64 = 2;
const STREAM_COVARIANCE: u64 = 3;
const STREAM_UNOT: u64 = 4;
const STREAM_SWAP: u64 = 5;
const STREAM_CHARLIE: u64 = 6;

/// A named sampled series.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

/// A parameter grid with one or more series sampled on it.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Curve {
    pub name: String,
    pub parameter: String,
    pub grid: Vec<f64>,
    pub series: Vec<Series>,
}

impl Curve {
    pub fn new(
        name: impl Into<String>,
        parameter: impl Into<String>,
        grid: Vec<f64>,
        series: Vec<Series>,
    ) -> Result<Self> {
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidValue(
                "curve grid must be strictly increasing".into(),
            ));
        }
        for s in &series {
            if s.values.len() != grid.len() {
                return Err(Error::DimensionMismatch(format!(
                    "series `{}` has {} values on a {}-point grid",
                    s.name,
                    s.values.len(),
                    grid.len()
                )));
            }
            if s.values.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidValue(format!(
                    "series `{}` contains a non-finite value",
                    s.name
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            parameter: parameter.into(),
            grid,
            series,
        })
    }
}

/// One reproduced scalar with its expected value and verdict.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScalarCheck {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub note: String,
}

impl ScalarCheck {
    fn new(
        name: impl Into<String>,
        value: f64,
        expected: f64,
        tolerance: f64,
        note: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            value,
            expected,
            tolerance,
            pass: value.is_finite() && (value - expected).abs() <= tolerance,
            note: note.into(),
        }
    }
}

/// Internal tolerance constants, surfaced for the record.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ToleranceTable {
    pub hermitian: f64,
    pub psd_floor: f64,
    pub psd_reject: f64,
    pub jacobi_offdiag: f64,
    pub degenerate_norm: f64,
    pub vanishing_probability: f64,
}

impl Default for ToleranceTable {
    fn default() -> Self {
        Self {
            hermitian: crate::TOL_HERMITIAN,
            psd_floor: crate::TOL_PSD_FLOOR,
            psd_reject: crate::TOL_PSD_REJECT,
            jacobi_offdiag: crate::TOL_JACOBI_OFFDIAG,
            degenerate_norm: crate::TOL_DEGENERATE,
            vanishing_probability: crate::TOL_VANISHING_PROB,
        }
    }
}

/// Run configuration echoed into the report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ReportMetadata {
    pub seed: u64,
    pub quad_theta: usize,
    pub quad_phi: usize,
    pub grid_points: usize,
    pub rng: String,
    pub quadrature_route: String,
    pub tolerances: ToleranceTable,
}

/// Aggregated reproduction results. Wall-clock time is deliberately not part
/// of the payload so that identical configurations serialize byte-identically.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExperimentReport {
    pub schema_version: String,
    pub metadata: ReportMetadata,
    /// Serialized as one flat object keyed by scalar name, in run order.
    #[serde(serialize_with = "scalars_as_object")]
    pub scalars: Vec<ScalarCheck>,
    pub curves: Vec<Curve>,
}

fn scalars_as_object<S>(
    scalars: &[ScalarCheck],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    #[derive(serde::Serialize)]
    struct Body<'a> {
        value: f64,
        expected: f64,
        tolerance: f64,
        pass: bool,
        note: &'a str,
    }
    serializer.collect_map(scalars.iter().map(|s| {
        (
            &s.name,
            Body {
                value: s.value,
                expected: s.expected,
                tolerance: s.tolerance,
                pass: s.pass,
                note: &s.note,
            },
        )
    }))
}

impl ExperimentReport {
    pub fn all_pass(&self) -> bool {
        self.scalars.iter().all(|s| s.pass)
    }

    pub fn failures(&self) -> Vec<&ScalarCheck> {
        self.scalars.iter().filter(|s| !s.pass).collect()
    }
}

// ---------------------------------------------------------------------------
// measure-and-prepare average fidelity
// ---------------------------------------------------------------------------

/// Closed form of the four-angle strategy average, 54 + 112 ln²2 − 154.5 ln 2.
pub fn measurement_fidelity_closed_form() -> f64 {
    let l = std::f64::consts::LN_2;
    54.0 + 112.0 * l * l - 154.5 * l
}

/// Closed form of the same average in the strictly unit-trace convention,
/// 55 + 112 ln²2 − 156 ln 2.
pub fn measurement_fidelity_unit_trace_closed_form() -> f64 {
    let l = std::f64::consts::LN_2;
    55.0 + 112.0 * l * l - 156.0 * l
}

/// Pointwise integrand of the strategy average: the fidelity of the two-branch
/// output for input `psi` (ideal target precomputed) and direction `eta`.
///
/// With `shared_branch_norm` the negative-outcome branch carries the positive
/// branch's normalization constant — the convention under which the average
/// equals [`measurement_fidelity_closed_form`]. Otherwise every branch is
/// unit-normalized and the average equals
/// [`measurement_fidelity_unit_trace_closed_form`].
fn measurement_bracket(
    psi: &PureState,
    psi_ideal: &PureState,
    eta: BlochAngles,
    shared_branch_norm: bool,
) -> Result<f64> {
    let zero = PureState::qubit_zero();
    let eta_state = ket_from_bloch(eta);
    let eta_perp = orthogonal_state(&eta_state)?;

    let w_plus = eta_state.overlap(psi)?.norm_sqr();
    let w_minus = eta_perp.overlap(psi)?.norm_sqr();

    let branch_plus = symmetrized_ideal(&eta_state, &zero)?;
    let branch_minus = symmetrized_ideal(&eta_perp, &zero)?;

    let o_plus = psi_ideal.overlap(&branch_plus)?.norm_sqr();
    let mut o_minus = psi_ideal.overlap(&branch_minus)?.norm_sqr();
    if shared_branch_norm {
        let c2 = (eta.theta() / 2.0).cos().powi(2);
        // rescale from the branch's own norm 2(1+sin²) to the shared 2(1+cos²)
        o_minus *= (2.0 - c2) / (1.0 + c2);
    }
    Ok(w_plus * o_plus + w_minus * o_minus)
}

/// Strategy average by the reduced product rule: the two azimuthal integrals
/// collapse to one over their difference, leaving a 3-D tensor quadrature
/// (Gauss–Legendre² × trapezoid). This is the default route.
pub fn measurement_fidelity_quadrature(n_theta: usize, n_phi: usize) -> Result<f64> {
    measurement_average(n_theta, n_phi, true)
}

/// Unit-trace variant of [`measurement_fidelity_quadrature`].
pub fn measurement_fidelity_quadrature_unit_trace(n_theta: usize, n_phi: usize) -> Result<f64> {
    measurement_average(n_theta, n_phi, false)
}

fn measurement_average(n_theta: usize, n_phi: usize, shared_branch_norm: bool) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(n_theta)?;
    let phis = azimuthal_nodes(n_phi)?;
    let zero = PureState::qubit_zero();
    let mut total = 0.0;
    for (&u, &wu) in nodes.iter().zip(&weights) {
        let theta = u.clamp(-1.0, 1.0).acos();
        let psi = ket_from_bloch(BlochAngles::new(theta, 0.0)?);
        let psi_ideal = symmetrized_ideal(&psi, &zero)?;
        for (&up, &wp) in nodes.iter().zip(&weights) {
            let theta_eta = up.clamp(-1.0, 1.0).acos();
            let mut phi_acc = 0.0;
            for &dphi in &phis {
                let eta = BlochAngles::new(theta_eta, dphi)?;
                phi_acc += measurement_bracket(&psi, &psi_ideal, eta, shared_branch_norm)?;
            }
            total += wu * wp * phi_acc / n_phi as f64;
        }
    }
    Ok(total / 4.0)
}

/// Strategy average by the full 4-D tensor rule (both azimuthal angles kept
/// explicit); used to verify the reduced route.
pub fn measurement_fidelity_quadrature_full(n_theta: usize, n_phi: usize) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(n_theta)?;
    let phis = azimuthal_nodes(n_phi)?;
    let zero = PureState::qubit_zero();
    let mut total = 0.0;
    for (&u, &wu) in nodes.iter().zip(&weights) {
        let theta = u.clamp(-1.0, 1.0).acos();
        for &phi in &phis {
            let psi = ket_from_bloch(BlochAngles::new(theta, phi)?);
            let psi_ideal = symmetrized_ideal(&psi, &zero)?;
            for (&up, &wp) in nodes.iter().zip(&weights) {
                let theta_eta = up.clamp(-1.0, 1.0).acos();
                let mut acc = 0.0;
                for &phi_eta in &phis {
                    let eta = BlochAngles::new(theta_eta, phi_eta)?;
                    acc += measurement_bracket(&psi, &psi_ideal, eta, true)?;
                }
                total += wu * wp * acc / (n_phi * n_phi) as f64;
            }
        }
    }
    Ok(total / 4.0)
}

/// Monte Carlo estimate of the strategy average with its standard error.
pub fn measurement_fidelity_monte_carlo(samples: usize, seed: u64) -> Result<(f64, f64)> {
    let mut rng = seeded_rng(seed, STREAM_MEASUREMENT_MC);
    let zero = PureState::qubit_zero();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let psi = random_qubit(&mut rng);
        let psi_ideal = symmetrized_ideal(&psi, &zero)?;
        let u: f64 = rng.gen_range(-1.0..=1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let eta = BlochAngles::new(u.clamp(-1.0, 1.0).acos(), phi)?;
        let v = measurement_bracket(&psi, &psi_ideal, eta, true)?;
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let variance = (sum_sq / n - mean * mean).max(0.0) / n;
    Ok((mean, variance.sqrt()))
}

/// Strategy average evaluated through the full channel pipeline: average the
/// fidelity of [`crate::entanglers::measurement_entangler_averaged`] outputs
/// over inputs. Strictly unit-trace by construction, so it reproduces
/// [`measurement_fidelity_unit_trace_closed_form`].
pub fn measurement_fidelity_channel_average(
    n_inputs: usize,
    quad_theta: usize,
    quad_phi: usize,
) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(n_inputs)?;
    let zero = PureState::qubit_zero();
    let mut total = 0.0;
    for (&u, &w) in nodes.iter().zip(&weights) {
        let theta = u.clamp(-1.0, 1.0).acos();
        // the average fidelity is azimuthally invariant; fix phi = 0
        let psi = ket_from_bloch(BlochAngles::new(theta, 0.0)?);
        let rho = crate::entanglers::measurement_entangler_averaged(&psi, quad_theta, quad_phi)?;
        let target = symmetrized_ideal(&psi, &zero)?;
        total += w * fidelity_pure(&rho, &target)? / 2.0;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// measurement-strategy upper bound
// ---------------------------------------------------------------------------

fn strategy_c1() -> f64 {
    3.0 - 4.0 * std::f64::consts::LN_2
}

fn strategy_c2() -> f64 {
    12.0 * std::f64::consts::LN_2 - 8.0
}

fn strategy_c3() -> f64 {
    2.0f64.sqrt() * (3.0 - 4.0 * std::f64::consts::LN_2)
}

/// Reduced negative-branch objective at its optimal azimuthal difference π.
pub fn strategy_f0(theta_double: f64, theta_prime: f64) -> f64 {
    0.25 * (1.0 + strategy_c1() * theta_double.cos()
        - strategy_c2() * theta_double.cos() * theta_prime.cos()
        + strategy_c3() * theta_double.sin() * theta_prime.sin())
}

/// Reduced positive-branch objective at its optimal azimuthal difference 0.
pub fn strategy_f1(theta_double: f64, theta_prime: f64) -> f64 {
    0.25 * (1.0
        + strategy_c1() * theta_double.cos()
        + strategy_c2() * theta_double.cos() * theta_prime.cos()
        + strategy_c3() * theta_double.sin() * theta_prime.sin())
}

/// Negative-branch objective with the azimuthal difference kept explicit,
/// written with the d-coefficients (d₁ = 2ln2−1, d₂ = 3−4ln2, d₃ = 8ln2−5).
pub fn strategy_f0_general(theta_double: f64, dphi: f64, theta_prime: f64) -> f64 {
    let l = std::f64::consts::LN_2;
    let (d1, d2, d3) = (2.0 * l - 1.0, 3.0 - 4.0 * l, 8.0 * l - 5.0);
    let (cd, sd) = ((theta_double / 2.0).cos(), (theta_double / 2.0).sin());
    let (cp, sp) = ((theta_prime / 2.0).cos(), (theta_prime / 2.0).sin());
    d1 * cd * cd * sp * sp
        + d2 * cd * cd * cp * cp
        + 0.5 * d2 * sd * sd * sp * sp
        + 0.5 * d3 * sd * sd * cp * cp
        - 2.0f64.sqrt() * d2 * dphi.cos() * cd * cp * sd * sp
}

/// Positive-branch companion of [`strategy_f0_general`].
pub fn strategy_f1_general(theta_double: f64, dphi: f64, theta_prime: f64) -> f64 {
    let l = std::f64::consts::LN_2;
    let (d1, d2, d3) = (2.0 * l - 1.0, 3.0 - 4.0 * l, 8.0 * l - 5.0);
    let (cd, sd) = ((theta_double / 2.0).cos(), (theta_double / 2.0).sin());
    let (cp, sp) = ((theta_prime / 2.0).cos(), (theta_prime / 2.0).sin());
    d1 * cd * cd * cp * cp
        + d2 * cd * cd * sp * sp
        + 0.5 * d2 * sd * sd * cp * cp
        + 0.5 * d3 * sd * sd * sp * sp
        + 2.0f64.sqrt() * d2 * dphi.cos() * cd * cp * sd * sp
}

/// Location and value of one maximized strategy objective.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct StrategyMax {
    pub value: f64,
    pub theta_prime: f64,
    pub theta_double: f64,
}

/// Both objective maxima and the resulting strategy bound 4 ln 2 − 2.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct MeasurementBound {
    pub f0: StrategyMax,
    pub f1: StrategyMax,
    pub bound: f64,
}

/// Maximize both reduced objectives over [0, π]² by dense grid plus local
/// zoom refinement.
pub fn measurement_strategy_bound() -> MeasurementBound {
    let f0 = maximize_on_square(strategy_f0);
    let f1 = maximize_on_square(strategy_f1);
    MeasurementBound {
        f0,
        f1,
        bound: f0.value + f1.value,
    }
}

fn maximize_on_square(f: fn(f64, f64) -> f64) -> StrategyMax {
    let pi = std::f64::consts::PI;
    let mut center = (pi / 2.0, pi / 2.0);
    let mut half_width = pi / 2.0;
    let mut best = (f(center.0, center.1), center.0, center.1);
    // initial scan at ~1e-3 resolution, then zoom by 10 per round
    let mut steps = 1600usize;
    for round in 0..8 {
        let lo = |c: f64| (c - half_width).max(0.0);
        let hi = |c: f64| (c + half_width).min(pi);
        let (d_lo, d_hi) = (lo(center.0), hi(center.0));
        let (p_lo, p_hi) = (lo(center.1), hi(center.1));
        for i in 0..=steps {
            let td = d_lo + (d_hi - d_lo) * i as f64 / steps as f64;
            for j in 0..=steps {
                let tp = p_lo + (p_hi - p_lo) * j as f64 / steps as f64;
                let v = f(td, tp);
                if v > best.0 {
                    best = (v, td, tp);
                }
            }
        }
        center = (best.1, best.2);
        half_width /= 10.0;
        if round == 0 {
            steps = 200;
        }
    }
    StrategyMax {
        value: best.0,
        theta_double: best.1,
        theta_prime: best.2,
    }
}

// ---------------------------------------------------------------------------
// figure curves
// ---------------------------------------------------------------------------

fn real_qubit_from_alpha_sq(alpha_sq: f64) -> PureState {
    let alpha = alpha_sq.clamp(0.0, 1.0).sqrt();
    let beta = (1.0 - alpha_sq).clamp(0.0, 1.0).sqrt();
    PureState::new(
        vec![cx(alpha, 0.0), cx(beta, 0.0)],
        SubsystemDims::single(2),
    )
    .expect("real amplitudes are normalized")
}

fn uniform_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidValue("need at least 2 grid points".into()));
    }
    Ok((0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect())
}

/// Single-qubit entropy curves over α² (ideal target vs machine output) and
/// the total two-qubit entropy of the machine output.
pub fn entropy_curves(grid_points: usize) -> Result<(Curve, Curve)> {
    let grid = uniform_grid(grid_points)?;
    let zero = PureState::qubit_zero();
    let mut ideal_single = Vec::with_capacity(grid.len());
    let mut output_single = Vec::with_capacity(grid.len());
    let mut output_total = Vec::with_capacity(grid.len());
    for &a2 in &grid {
        let psi = real_qubit_from_alpha_sq(a2);
        let ideal = symmetrized_ideal(&psi, &zero)?;
        ideal_single.push(von_neumann_entropy(&ideal.density().partial_trace(&[0])?)?);
        let out = apply_optimal_entangler(&psi)?;
        output_single.push(von_neumann_entropy(&out.partial_trace(&[0])?)?);
        output_total.push(von_neumann_entropy(&out)?);
    }
    let single = Curve::new(
        "fig1",
        "alpha_sq",
        grid.clone(),
        vec![
            Series {
                name: "ideal_single_qubit_entropy".into(),
                values: ideal_single,
            },
            Series {
                name: "output_single_qubit_entropy".into(),
                values: output_single,
            },
        ],
    )?;
    let total = Curve::new(
        "fig2",
        "alpha_sq",
        grid,
        vec![Series {
            name: "output_two_qubit_entropy".into(),
            values: output_total,
        }],
    )?;
    Ok((single, total))
}

/// Closed form of the ideal-target inseparability witness over real α:
/// (α² − 1) / (2(α² + 1)).
pub fn ideal_ppt_closed_form(alpha: f64) -> f64 {
    (alpha * alpha - 1.0) / (2.0 * (alpha * alpha + 1.0))
}

/// Minimal partial-transpose eigenvalue over α for the ideal target and the
/// machine output.
pub fn ppt_curves(grid_points: usize) -> Result<Curve> {
    let grid = uniform_grid(grid_points)?;
    let zero = PureState::qubit_zero();
    let mut ideal = Vec::with_capacity(grid.len());
    let mut output = Vec::with_capacity(grid.len());
    for &alpha in &grid {
        let psi = real_qubit_from_alpha_sq(alpha * alpha);
        let target = symmetrized_ideal(&psi, &zero)?;
        ideal.push(ppt_min_eigenvalue(&target.density())?);
        output.push(ppt_min_eigenvalue(&apply_optimal_entangler(&psi)?)?);
    }
    Curve::new(
        "fig3",
        "alpha",
        grid,
        vec![
            Series {
                name: "ideal_ppt_min_eigenvalue".into(),
                values: ideal,
            },
            Series {
                name: "output_ppt_min_eigenvalue".into(),
                values: output,
            },
        ],
    )
}

// ---------------------------------------------------------------------------
// no-signaling bound
// ---------------------------------------------------------------------------

/// The four eigenvalues of the covariant two-qubit output family:
/// ¼(1 ± 2η + t) and ¼(1 − t ± 2√(t² + t²ₓᵧ)).
pub fn nosignaling_eigenvalues(eta: f64, t: f64, t_xy: f64) -> [f64; 4] {
    let radial = (t * t + t_xy * t_xy).sqrt();
    [
        0.25 * (1.0 + 2.0 * eta + t),
        0.25 * (1.0 - 2.0 * eta + t),
        0.25 * (1.0 - t + 2.0 * radial),
        0.25 * (1.0 - t - 2.0 * radial),
    ]
}

/// Explicit covariant output matrix for a +z input, in the two-qubit
/// computational basis.
pub fn nosignaling_output_matrix(eta: f64, t: f64, t_xy: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(0, 0, cx(0.25 * (1.0 + 2.0 * eta + t), 0.0));
    m.set(1, 1, cx(0.25 * (1.0 - t), 0.0));
    m.set(2, 2, cx(0.25 * (1.0 - t), 0.0));
    m.set(3, 3, cx(0.25 * (1.0 - 2.0 * eta + t), 0.0));
    m.set(1, 2, cx(0.5 * t, 0.5 * t_xy));
    m.set(2, 1, cx(0.5 * t, -0.5 * t_xy));
    m
}

/// Result of the constrained fidelity maximization over the covariant,
/// no-signaling output family.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct NoSignalingSearch {
    pub f_star: f64,
    pub t_star: f64,
    pub t_xy_star: f64,
    pub eta_star: f64,
    /// Value of the binding eigenvalue constraint ¼(1 − t − 2√(t² + t²ₓᵧ))
    /// at the maximizer; zero means boundary-active.
    pub active_constraint: f64,
    /// Minimal eigenvalue of the explicitly built output matrix at the
    /// maximizer, from the dense eigensolver.
    pub psd_min_eigenvalue: f64,
}

/// Maximize F = (1 + t)/4 over (η, t, tₓᵧ) subject to all four eigenvalues
/// being nonnegative: dense grid over (t, tₓᵧ) followed by bisection onto the
/// active boundary. F does not depend on η, so η is reported as the midpoint
/// of its feasible interval.
pub fn nosignaling_bound_search(resolution: usize) -> Result<NoSignalingSearch> {
    if resolution < 1000 {
        return Err(Error::InvalidValue(format!(
            "no-signaling search needs at least 1000 grid points per axis, got {resolution}"
        )));
    }
    let feasible = |t: f64, t_xy: f64| -> bool {
        let ev = nosignaling_eigenvalues(0.0, t, t_xy);
        // η only shifts the first pair; feasibility of some η needs 1 + t ≥ 0,
        // which the η = 0 evaluation already captures.
        ev[2] >= 0.0 && ev[3] >= 0.0 && 1.0 + t >= 0.0
    };

    let step = 2.0 / (resolution - 1) as f64;
    let mut best: Option<(f64, f64)> = None;
    for i in 0..resolution {
        let t = -1.0 + step * i as f64;
        for j in 0..resolution {
            let t_xy = -1.0 + step * j as f64;
            if !feasible(t, t_xy) {
                continue;
            }
            // higher t wins; among equal t prefer the smaller |t_xy|
            let better = match best {
                None => true,
                Some((bt, bxy)) => t > bt || (t == bt && t_xy.abs() < bxy.abs()),
            };
            if better {
                best = Some((t, t_xy));
            }
        }
    }
    let (grid_t, t_xy_star) = best.expect("t = 0 is always feasible");

    // the radial constraint tightens monotonically in t; bisect onto its root
    let mut lo = grid_t;
    let mut hi = (grid_t + 2.0 * step).min(1.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid, t_xy_star) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_star = lo;
    let f_star = 0.25 * (1.0 + t_star);
    // fidelity is independent of eta; report the feasible-interval midpoint
    let (eta_lo, eta_hi) = (-(1.0 + t_star) / 2.0, (1.0 + t_star) / 2.0);
    let eta_star = 0.5 * (eta_lo + eta_hi);
    let active = nosignaling_eigenvalues(eta_star, t_star, t_xy_star)[3];
    let rho = nosignaling_output_matrix(eta_star, t_star, t_xy_star);
    let psd_min = rho.hermitian_eigenvalues()?[0];
    Ok(NoSignalingSearch {
        f_star,
        t_star,
        t_xy_star,
        eta_star,
        active_constraint: active,
        psd_min_eigenvalue: psd_min,
    })
}

// ---------------------------------------------------------------------------
// covariance witnesses
// ---------------------------------------------------------------------------

/// How a channel's universality is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum WitnessMode {
    /// Full output covariance: channel(uψ) equals (u⊗u) channel(ψ) (u⊗u)†.
    OutputCovariance,
    /// Constancy of the fidelity to the per-input ideal target.
    FidelityConstancy,
    /// The output is literally input-independent.
    ConstantOutput,
}

/// Universality diagnostic for one channel.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CovarianceWitness {
    pub channel: String,
    pub mode: WitnessMode,
    pub samples: usize,
    /// Max entrywise deviation (covariance/constant modes) or fidelity spread.
    pub deviation: f64,
}

/// Run the appropriate universality check for `channel` over seeded random
/// inputs (and rotations where applicable).
pub fn covariance_witness(channel: &str, samples: usize, seed: u64) -> Result<CovarianceWitness> {
    let mut rng = seeded_rng(seed, STREAM_COVARIANCE);
    match channel {
        "unot" => {
            let ch = EntanglerChannel::unot();
            let mut dev: f64 = 0.0;
            for _ in 0..samples {
                let psi = random_qubit(&mut rng);
                let u = random_su2(&mut rng);
                let rotated_in = {
                    let amps = u.mul_vec(psi.amplitudes())?;
                    PureState::new(amps, SubsystemDims::single(2))?
                };
                let lhs = ch.apply(&rotated_in)?;
                let uu = u.kron(&u);
                let rhs = uu.mul(ch.apply(&psi)?.matrix())?.mul(&uu.adjoint())?;
                dev = dev.max(lhs.matrix().max_abs_diff(&rhs));
            }
            Ok(CovarianceWitness {
                channel: channel.into(),
                mode: WitnessMode::OutputCovariance,
                samples,
                deviation: dev,
            })
        }
        "optimal" => {
            // the fixed reference qubit breaks full output covariance; the
            // universal statement is constancy of the fidelity
            let zero = PureState::qubit_zero();
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for _ in 0..samples {
                let psi = random_qubit(&mut rng);
                let rho = apply_optimal_entangler(&psi)?;
                let target = symmetrized_ideal(&psi, &zero)?;
                let f = fidelity_pure(&rho, &target)?;
                lo = lo.min(f);
                hi = hi.max(f);
            }
            Ok(CovarianceWitness {
                channel: channel.into(),
                mode: WitnessMode::FidelityConstancy,
                samples,
                deviation: hi - lo,
            })
        }
        "antisymmetric" | "antisym" => {
            let reference = antisymmetric_entangler(&PureState::qubit_zero())?;
            let mut dev: f64 = 0.0;
            for _ in 0..samples {
                let psi = random_qubit(&mut rng);
                let out = antisymmetric_entangler(&psi)?;
                dev = dev.max(out.matrix().max_abs_diff(reference.matrix()));
            }
            Ok(CovarianceWitness {
                channel: channel.into(),
                mode: WitnessMode::ConstantOutput,
                samples,
                deviation: dev,
            })
        }
        other => Err(Error::UnknownChannel(other.to_string())),
    }
}

// ---------------------------------------------------------------------------
// the full reproduction run
// ---------------------------------------------------------------------------

/// Compute every reproduced scalar and curve at the given configuration.
/// Deterministic: the same seed and orders serialize byte-identically.
pub fn reproduce_all(
    seed: u64,
    quad_theta: usize,
    quad_phi: usize,
    grid_points: usize,
) -> Result<ExperimentReport> {
    let mut scalars = Vec::new();
    let ln2 = std::f64::consts::LN_2;
    let zero = PureState::qubit_zero();

    // optimal machine: fidelity constancy and distances
    {
        let expect = optimal_fidelity();
        let mut rng = seeded_rng(seed, STREAM_OPTIMAL);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut mean = 0.0;
        let mut bures_hi: f64 = 0.0;
        let n = 1000;
        for _ in 0..n {
            let psi = random_qubit(&mut rng);
            let rho = apply_optimal_entangler(&psi)?;
            let target = symmetrized_ideal(&psi, &zero)?;
            let f = fidelity_pure(&rho, &target)?;
            mean += f;
            lo = lo.min(f);
            hi = hi.max(f);
            bures_hi = bures_hi.max(bures_distance(&rho, &target.density())?);
        }
        mean /= n as f64;
        scalars.push(ScalarCheck::new(
            "optimal_fidelity",
            mean,
            expect,
            1e-12,
            "(9 + 3*sqrt(2))/14, constant over inputs",
        ));
        scalars.push(ScalarCheck::new(
            "optimal_fidelity_spread",
            hi - lo,
            0.0,
            1e-12,
            "max - min over 1000 seeded inputs",
        ));
        scalars.push(ScalarCheck::new(
            "optimal_bures_distance",
            bures_hi,
            frozen::BURES_OPTIMAL_OUTPUT,
            1e-9,
            "sqrt(2 - 2 sqrt(F)) = 2 sin(theta/2) ~ 0.2342; the companion value \
             0.0541 equals 1 - F = sin^2(theta), not this distance",
        ));
    }

    // measure-and-prepare average fidelity, four routes
    {
        let closed = measurement_fidelity_closed_form();
        let quad = measurement_fidelity_quadrature(quad_theta, quad_phi)?;
        scalars.push(ScalarCheck::new(
            "measurement_avg_fidelity",
            quad,
            closed,
            1e-4,
            "reduced 3-D quadrature vs closed form 54 + 112 ln^2(2) - 154.5 ln(2)",
        ));
        let reduced32 = measurement_fidelity_quadrature(32, 32)?;
        let full32 = measurement_fidelity_quadrature_full(32, 32)?;
        scalars.push(ScalarCheck::new(
            "measurement_quadrature_route_agreement",
            (reduced32 - full32).abs(),
            0.0,
            1e-9,
            "reduced 3-D route vs full 4-D tensor route at order 32",
        ));
        let (mc, stderr) = measurement_fidelity_monte_carlo(1_000_000, seed)?;
        scalars.push(ScalarCheck::new(
            "measurement_avg_fidelity_mc",
            mc,
            closed,
            3.0 * stderr,
            format!("1e6 seeded samples, stderr {stderr:.2e}, tolerance 3 stderr"),
        ));
        let channel_avg = measurement_fidelity_channel_average(32, quad_theta, quad_phi)?;
        scalars.push(ScalarCheck::new(
            "measurement_avg_fidelity_unit_trace",
            channel_avg,
            measurement_fidelity_unit_trace_closed_form(),
            1e-6,
            "strictly unit-trace channel pipeline; equals 55 + 112 ln^2(2) - 156 ln(2). \
             The primary scalar instead carries the positive branch's normalization \
             constant on both branches, the convention its closed form corresponds to",
        ));
    }

    // strategy upper bound
    {
        let b = measurement_strategy_bound();
        let half_bound = 2.0 * ln2 - 1.0;
        scalars.push(ScalarCheck::new(
            "measurement_f0_max",
            b.f0.value,
            half_bound,
            1e-6,
            "2 ln 2 - 1",
        ));
        scalars.push(ScalarCheck::new(
            "measurement_f0_argmax_theta_prime",
            b.f0.theta_prime,
            std::f64::consts::PI,
            1e-6,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "measurement_f0_argmax_theta_double",
            b.f0.theta_double,
            0.0,
            1e-6,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "measurement_f1_max",
            b.f1.value,
            half_bound,
            1e-6,
            "2 ln 2 - 1",
        ));
        scalars.push(ScalarCheck::new(
            "measurement_f1_argmax_theta_prime",
            b.f1.theta_prime,
            0.0,
            1e-6,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "measurement_f1_argmax_theta_double",
            b.f1.theta_double,
            0.0,
            1e-6,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "measurement_bound",
            b.bound,
            4.0 * ln2 - 2.0,
            1e-6,
            "4 ln 2 - 2",
        ));
    }

    // universal-NOT machine constants
    {
        let mut rng = seeded_rng(seed, STREAM_UNOT);
        let (mut ent_lo, mut ent_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut flip_lo, mut flip_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut clone_lo, mut clone_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ppt_lo, mut ppt_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let mut bures_hi = f64::NEG_INFINITY;
        let n = 1000;
        for _ in 0..n {
            let psi = random_qubit(&mut rng);
            let (ab, c, _) = apply_unot_entangler(&psi)?;
            let target = unot_ideal_target(&psi)?;
            let f_ent = fidelity_pure(&ab, &target)?;
            ent_lo = ent_lo.min(f_ent);
            ent_hi = ent_hi.max(f_ent);
            let perp = orthogonal_state(&psi)?;
            let f_flip = fidelity_pure(&c, &perp)?;
            flip_lo = flip_lo.min(f_flip);
            flip_hi = flip_hi.max(f_flip);
            let f_clone = fidelity_pure(&ab.partial_trace(&[0])?, &psi)?;
            clone_lo = clone_lo.min(f_clone);
            clone_hi = clone_hi.max(f_clone);
            let e = ppt_min_eigenvalue(&ab)?;
            ppt_lo = ppt_lo.min(e);
            ppt_hi = ppt_hi.max(e);
            bures_hi = bures_hi.max(bures_distance(&ab, &target.density())?);
        }
        scalars.push(ScalarCheck::new(
            "unot_entangling_fidelity",
            0.5 * (ent_lo + ent_hi),
            1.0 / 3.0,
            1e-12,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "unot_flip_fidelity",
            0.5 * (flip_lo + flip_hi),
            2.0 / 3.0,
            1e-12,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "unot_clone_fidelity",
            0.5 * (clone_lo + clone_hi),
            5.0 / 6.0,
            1e-12,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "unot_constancy_spread",
            (ent_hi - ent_lo)
                .max(flip_hi - flip_lo)
                .max(clone_hi - clone_lo),
            0.0,
            1e-12,
            "largest spread among the three fidelities over 1000 inputs",
        ));
        scalars.push(ScalarCheck::new(
            "unot_ppt_min_eigenvalue",
            0.5 * (ppt_lo + ppt_hi),
            (2.0 - 5.0f64.sqrt()) / 6.0,
            1e-12,
            "(2 - sqrt(5))/6, constant over inputs",
        ));
        scalars.push(ScalarCheck::new(
            "unot_ppt_spread",
            ppt_hi - ppt_lo,
            0.0,
            1e-12,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "unot_bures_distance",
            bures_hi,
            (2.0 - 2.0 / 3.0f64.sqrt()).sqrt(),
            1e-9,
            "sqrt(2 - 2/sqrt(3))",
        ));
    }

    // controlled-SWAP post-selection
    {
        let mut rng = seeded_rng(seed, STREAM_SWAP);
        let one = PureState::qubit_one();
        let (sym, anti) = swap_post_select(&zero, &one)?;
        scalars.push(ScalarCheck::new(
            "swap_orthogonal_symmetric_probability",
            sym.probability,
            0.5,
            1e-12,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "swap_orthogonal_antisymmetric_probability",
            anti.probability,
            0.5,
            1e-12,
            "",
        ));
        let mut dev: f64 = 0.0;
        for _ in 0..100 {
            let psi = random_qubit(&mut rng);
            let phi = random_qubit(&mut rng);
            let (sym, anti) = swap_post_select(&psi, &phi)?;
            let ov2 = psi.overlap(&phi)?.norm_sqr();
            dev = dev.max((sym.probability - (1.0 + ov2) / 2.0).abs());
            dev = dev.max((anti.probability - (1.0 - ov2) / 2.0).abs());
            dev = dev.max((sym.probability + anti.probability - 1.0).abs());
        }
        scalars.push(ScalarCheck::new(
            "swap_probability_formula_deviation",
            dev,
            0.0,
            1e-12,
            "against (1 +/- |<psi|phi>|^2)/2 over 100 seeded pairs",
        ));
        // explicit 3-dimensional case
        let dims = SubsystemDims::single(3);
        let r = 1.0 / 2.0f64.sqrt();
        let psi3 = PureState::new(
            vec![cx(r, 0.0), cx(r, 0.0), Complex64::default()],
            dims.clone(),
        )?;
        let phi3 = PureState::basis(dims, 0)?;
        let (sym3, _) = swap_post_select(&psi3, &phi3)?;
        scalars.push(ScalarCheck::new(
            "swap_qutrit_symmetric_probability",
            sym3.probability,
            0.75,
            1e-12,
            "overlap 1/sqrt(2) in dimension 3",
        ));
    }

    // singlet-decomposition readout
    {
        let mut rng = seeded_rng(seed, STREAM_CHARLIE);
        let one = PureState::qubit_one();
        let mut dev: f64 = 0.0;
        let mut prob_dev: f64 = 0.0;
        for _ in 0..100 {
            let psi = random_qubit(&mut rng);
            let mut total = 0.0;
            for outcome in [0u8, 1] {
                let (ab, p) = charlie_protocol(&psi, outcome)?;
                total += p;
                let reference = if outcome == 1 { &zero } else { &one };
                let ideal = symmetrized_ideal(&psi, reference)?;
                dev = dev.max((ab.overlap(&ideal)?.norm() - 1.0).abs());
            }
            prob_dev = prob_dev.max((total - 1.0).abs());
        }
        scalars.push(ScalarCheck::new(
            "charlie_overlap_deviation",
            dev,
            0.0,
            1e-12,
            "post-measurement state vs the matching symmetrized target",
        ));
        scalars.push(ScalarCheck::new(
            "charlie_probability_sum_deviation",
            prob_dev,
            0.0,
            1e-12,
            "",
        ));
    }

    // no-signaling bound
    {
        let s = nosignaling_bound_search(1001)?;
        scalars.push(ScalarCheck::new(
            "nosignaling_f_star",
            s.f_star,
            1.0 / 3.0,
            1e-6,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "nosignaling_t_star",
            s.t_star,
            1.0 / 3.0,
            1e-4,
            "",
        ));
        scalars.push(ScalarCheck::new(
            "nosignaling_active_constraint",
            s.active_constraint,
            0.0,
            1e-6,
            "(1 - t - 2 sqrt(t^2 + t_xy^2))/4 at the maximizer",
        ));
        scalars.push(ScalarCheck::new(
            "nosignaling_psd_min_eigenvalue",
            s.psd_min_eigenvalue,
            0.0,
            1e-9,
            "eigensolver on the explicit output matrix at the maximizer",
        ));
    }

    // covariance witnesses
    {
        let w = covariance_witness("unot", 200, seed)?;
        scalars.push(ScalarCheck::new(
            "covariance_unot_deviation",
            w.deviation,
            0.0,
            1e-12,
            "channel(u psi) vs (u x u) channel(psi) (u x u)^dag, 200 rotations",
        ));
        let w = covariance_witness("optimal", 1000, seed)?;
        scalars.push(ScalarCheck::new(
            "covariance_optimal_fidelity_spread",
            w.deviation,
            0.0,
            1e-12,
            "fidelity constancy stands in for covariance: the fixed reference \
             qubit breaks full output covariance",
        ));
        let w = covariance_witness("antisymmetric", 100, seed)?;
        scalars.push(ScalarCheck::new(
            "covariance_antisymmetric_deviation",
            w.deviation,
            0.0,
            0.0,
            "constant channel, exactly zero",
        ));
    }

    // figure curves and their endpoint checks
    let (fig1, fig2) = entropy_curves(grid_points)?;
    let fig3 = ppt_curves(grid_points)?;
    {
        let ideal = &fig1.series[0].values;
        let output = &fig1.series[1].values;
        scalars.push(ScalarCheck::new(
            "fig1_ideal_entropy_at_alpha_sq_0",
            ideal[0],
            ln2,
            1e-9,
            "maximally entangled limit",
        ));
        scalars.push(ScalarCheck::new(
            "fig1_ideal_entropy_at_alpha_sq_1",
            *ideal.last().unwrap(),
            0.0,
            1e-9,
            "product-state limit",
        ));
        scalars.push(ScalarCheck::new(
            "fig1_output_entropy_ratio_at_alpha_sq_0",
            output[0] / ln2,
            frozen::OUTPUT_SINGLE_QUBIT_ENTROPY_RATIO_ALPHA_0,
            1e-9,
            "in units of ln 2; within 0.001 of the quoted 0.998",
        ));

        let total = &fig2.series[0].values;
        let argmin = total
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| fig2.grid[i])
            .unwrap();
        scalars.push(ScalarCheck::new(
            "fig2_entropy_argmin_alpha_sq",
            argmin,
            0.5,
            1.0 / (grid_points - 1) as f64,
            "total output entropy is minimal at the balanced input",
        ));

        let ideal3 = &fig3.series[0].values;
        let out3 = &fig3.series[1].values;
        let mut closed_dev: f64 = 0.0;
        for (&alpha, &v) in fig3.grid.iter().zip(ideal3) {
            closed_dev = closed_dev.max((v - ideal_ppt_closed_form(alpha)).abs());
        }
        scalars.push(ScalarCheck::new(
            "fig3_ideal_closed_form_deviation",
            closed_dev,
            0.0,
            1e-10,
            "pointwise vs (alpha^2 - 1)/(2(alpha^2 + 1))",
        ));
        scalars.push(ScalarCheck::new(
            "fig3_output_at_alpha_0",
            out3[0],
            -0.447,
            1e-3,
            format!(
                "eigensolver value {:.9}; the two quoted endpoint expressions \
                 appear with swapped labels, and this report follows the \
                 eigensolver: the minimum sits at alpha = 0",
                frozen::PPT_OUTPUT_MIN_EIG_ALPHA_0
            ),
        ));
        scalars.push(ScalarCheck::new(
            "fig3_output_at_alpha_1",
            *out3.last().unwrap(),
            -0.001,
            1e-3,
            format!(
                "eigensolver value {:.9}; see fig3_output_at_alpha_0",
                frozen::PPT_OUTPUT_MIN_EIG_ALPHA_1
            ),
        ));
    }

    Ok(ExperimentReport {
        schema_version: "1".into(),
        metadata: ReportMetadata {
            seed,
            quad_theta,
            quad_phi,
            grid_points,
            rng: "chacha8 (per-task streams)".into(),
            quadrature_route: "reduced 3-D product rule (azimuthal difference); \
                               verified against the full 4-D tensor rule at order 32"
                .into(),
            tolerances: ToleranceTable::default(),
        },
        scalars,
        curves: vec![fig1, fig2, fig3],
    })
}
