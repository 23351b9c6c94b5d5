//! Pure-state construction and sampling: Bloch-sphere kets, orthogonal
//! complements, ideal symmetrized/antisymmetrized two-qubit targets, Bell
//! states, and seeded Haar sampling.

use crate::error::Error;
use crate::linalg::{cx, Complex64, ComplexMatrix, SubsystemDims};
use crate::{Result, TOL_DEGENERATE, TOL_HERMITIAN};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bloch-sphere angles, θ ∈ [0, π], φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidValue(format!(
                "theta {theta} outside [0, pi]"
            )));
        }
        if !phi.is_finite() || !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::InvalidValue(format!("phi {phi} outside [0, 2pi)")));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Normalized complex amplitude vector over a tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: SubsystemDims,
}

impl PureState {
    /// Build from amplitudes that are already normalized (within 1e-12).
    pub fn new(amplitudes: Vec<Complex64>, dims: SubsystemDims) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for total dimension {}",
                amplitudes.len(),
                dims.total()
            )));
        }
        // NaN slips through tolerance comparisons, so reject it up front
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::InvalidValue("non-finite amplitude".into()));
        }
        let norm = norm_of(&amplitudes);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dims })
    }

    /// Normalize and build; errors if the vector is numerically zero.
    pub fn normalized(amplitudes: Vec<Complex64>, dims: SubsystemDims) -> Result<Self> {
        let norm = norm_of(&amplitudes);
        if norm < TOL_DEGENERATE {
            return Err(Error::DegenerateInput(format!(
                "vector norm {norm:.3e} below threshold"
            )));
        }
        let scaled = amplitudes.iter().map(|&a| a / norm).collect();
        let mut state = Self::new(scaled, dims)?;
        // re-normalize once to absorb rounding
        let n2 = norm_of(&state.amplitudes);
        for a in &mut state.amplitudes {
            *a /= n2;
        }
        Ok(state)
    }

    /// Computational basis state |index⟩.
    pub fn basis(dims: SubsystemDims, index: usize) -> Result<Self> {
        let total = dims.total();
        if index >= total {
            return Err(Error::IndexOutOfRange {
                index,
                count: total,
            });
        }
        let mut amplitudes = vec![Complex64::default(); total];
        amplitudes[index] = cx(1.0, 0.0);
        Self::new(amplitudes, dims)
    }

    /// Single-qubit |0⟩.
    pub fn qubit_zero() -> Self {
        Self::basis(SubsystemDims::single(2), 0).unwrap()
    }

    /// Single-qubit |1⟩.
    pub fn qubit_one() -> Self {
        Self::basis(SubsystemDims::single(2), 1).unwrap()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_qubit(&self) -> bool {
        self.dim() == 2
    }

    /// Inner product ⟨self|other⟩.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "overlap of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product self ⊗ other.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amplitudes {
            for &b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        let mut dims = self.dims.factors().to_vec();
        dims.extend_from_slice(other.dims.factors());
        Self {
            amplitudes,
            dims: SubsystemDims::new(dims).unwrap(),
        }
    }

    /// Projector |ψ⟩⟨ψ| as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let matrix = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes);
        DensityMatrix::new_unchecked(matrix, self.dims.clone())
    }
}

fn norm_of(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian, unit-trace, positive-semidefinite operator with factor
/// dimensions attached.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: SubsystemDims,
}

impl DensityMatrix {
    /// Validated constructor: Hermitian within 1e-10, trace 1 within 1e-10,
    /// minimum eigenvalue ≥ -1e-9.
    pub fn new(matrix: ComplexMatrix, dims: SubsystemDims) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, factors give {}",
                matrix.rows(),
                matrix.cols(),
                dims.total()
            )));
        }
        if matrix
            .entries()
            .iter()
            .any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::InvalidValue("non-finite matrix entry".into()));
        }
        let dev = matrix.hermiticity_deviation();
        if dev > TOL_HERMITIAN {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(Error::InvalidValue(format!(
                "density matrix trace {trace} is not 1"
            )));
        }
        let eigenvalues = matrix.hermitian_eigenvalues()?;
        if eigenvalues[0] < -1e-9 {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: eigenvalues[0],
            });
        }
        Ok(Self { matrix, dims })
    }

    /// Internal constructor for outputs that are valid by construction.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dims: SubsystemDims) -> Self {
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Reduced state over the kept factors.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let matrix = self.matrix.partial_trace(&self.dims, keep)?;
        let kept_factors: Vec<usize> = self
            .dims
            .factors()
            .iter()
            .enumerate()
            .filter(|(i, _)| keep.contains(i))
            .map(|(_, &d)| d)
            .collect();
        let dims = if kept_factors.is_empty() {
            SubsystemDims::single(1)
        } else {
            SubsystemDims::new(kept_factors)?
        };
        Ok(DensityMatrix::new_unchecked(matrix, dims))
    }
}

/// Qubit state cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
pub fn ket_from_bloch(angles: BlochAngles) -> PureState {
    let half = angles.theta() / 2.0;
    let phase = Complex64::from_polar(1.0, angles.phi());
    PureState::new(
        vec![cx(half.cos(), 0.0), phase * half.sin()],
        SubsystemDims::single(2),
    )
    .expect("bloch kets are normalized")
}

/// Anti-unitary complement β*|0⟩ − α*|1⟩ of a qubit α|0⟩ + β|1⟩.
pub fn orthogonal_state(psi: &PureState) -> Result<PureState> {
    if !psi.is_qubit() {
        return Err(Error::DimensionMismatch(format!(
            "orthogonal complement defined for qubits, got dimension {}",
            psi.dim()
        )));
    }
    let a = psi.amplitudes()[0];
    let b = psi.amplitudes()[1];
    PureState::new(vec![b.conj(), -a.conj()], SubsystemDims::single(2))
}

/// Normalized symmetrization of |ψ⟩|φ⟩ + |φ⟩|ψ⟩.
pub fn symmetrized_ideal(psi: &PureState, phi: &PureState) -> Result<PureState> {
    combine(psi, phi, 1.0)
}

/// Normalized antisymmetrization of |ψ⟩|φ⟩ − |φ⟩|ψ⟩; parallel inputs are
/// degenerate.
pub fn antisymmetrized_ideal(psi: &PureState, phi: &PureState) -> Result<PureState> {
    combine(psi, phi, -1.0)
}

fn combine(psi: &PureState, phi: &PureState, sign: f64) -> Result<PureState> {
    if psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot symmetrize dimensions {} and {}",
            psi.dim(),
            phi.dim()
        )));
    }
    let pq = psi.tensor(phi);
    let qp = phi.tensor(psi);
    let amplitudes: Vec<Complex64> = pq
        .amplitudes()
        .iter()
        .zip(qp.amplitudes())
        .map(|(a, b)| a + b * sign)
        .collect();
    let dims = SubsystemDims::new(vec![psi.dim(), psi.dim()])?;
    PureState::normalized(amplitudes, dims)
}

/// The symmetric and antisymmetric Bell states (|01⟩ ± |10⟩)/√2.
pub fn bell_states() -> (PureState, PureState) {
    let s = 1.0 / 2.0f64.sqrt();
    let dims = SubsystemDims::qubits(2);
    let plus = PureState::new(
        vec![cx(0.0, 0.0), cx(s, 0.0), cx(s, 0.0), cx(0.0, 0.0)],
        dims.clone(),
    )
    .unwrap();
    let minus = PureState::new(
        vec![cx(0.0, 0.0), cx(s, 0.0), cx(-s, 0.0), cx(0.0, 0.0)],
        dims,
    )
    .unwrap();
    (plus, minus)
}

/// Haar-uniform random qubit: cos θ uniform on [-1, 1], φ uniform on [0, 2π).
pub fn random_qubit(rng: &mut ChaCha8Rng) -> PureState {
    let u: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let theta = u.clamp(-1.0, 1.0).acos();
    ket_from_bloch(BlochAngles::new(theta, phi).unwrap())
}

/// Haar-uniform SU(2) element from z-y-z Euler angles.
pub fn random_su2(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let alpha: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let u: f64 = rng.gen_range(-1.0..=1.0);
    let beta = u.clamp(-1.0, 1.0).acos();
    let gamma: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let rz = |angle: f64| {
        ComplexMatrix::diagonal(&[
            Complex64::from_polar(1.0, -angle / 2.0),
            Complex64::from_polar(1.0, angle / 2.0),
        ])
    };
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let ry =
        ComplexMatrix::new(2, 2, vec![cx(c, 0.0), cx(-s, 0.0), cx(s, 0.0), cx(c, 0.0)]).unwrap();
    rz(alpha).mul(&ry).unwrap().mul(&rz(gamma)).unwrap()
}

/// Deterministic generator for a given master seed and task stream.
///
/// ChaCha is counter-based, so distinct streams split the generator without
/// any dependence on scheduling or call order.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn bloch_poles_and_equator() {
        let zero = ket_from_bloch(BlochAngles::new(0.0, 1.0).unwrap());
        assert!((zero.amplitudes()[0] - cx(1.0, 0.0)).norm() < 1e-15);
        assert!(zero.amplitudes()[1].norm() < 1e-15);

        let one = ket_from_bloch(BlochAngles::new(std::f64::consts::PI, 0.0).unwrap());
        assert!(one.amplitudes()[0].norm() < 1e-15);
        assert!((one.amplitudes()[1] - cx(1.0, 0.0)).norm() < 1e-15);

        let plus = ket_from_bloch(BlochAngles::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap());
        let s = 1.0 / 2.0f64.sqrt();
        assert!((plus.amplitudes()[0] - cx(s, 0.0)).norm() < 1e-15);
        assert!((plus.amplitudes()[1] - cx(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bloch_angle_validation() {
        assert!(BlochAngles::new(-0.1, 0.0).is_err());
        assert!(BlochAngles::new(0.0, -0.1).is_err());
        assert!(BlochAngles::new(0.0, 2.0 * std::f64::consts::PI).is_err());
    }

    #[test]
    fn orthogonal_state_convention() {
        let zero = PureState::qubit_zero();
        let o = orthogonal_state(&zero).unwrap();
        assert!((o.amplitudes()[1] - cx(-1.0, 0.0)).norm() < 1e-15);

        let one = PureState::qubit_one();
        let o1 = orthogonal_state(&one).unwrap();
        assert!((o1.amplitudes()[0] - cx(1.0, 0.0)).norm() < 1e-15);

        // (|0> + i|1>)/sqrt2 -> (-i|0> - |1>)/sqrt2
        let s = 1.0 / 2.0f64.sqrt();
        let psi = PureState::new(vec![cx(s, 0.0), cx(0.0, s)], SubsystemDims::single(2)).unwrap();
        let perp = orthogonal_state(&psi).unwrap();
        assert!((perp.amplitudes()[0] - cx(0.0, -s)).norm() < 1e-15);
        assert!((perp.amplitudes()[1] - cx(-s, 0.0)).norm() < 1e-15);
        assert!(psi.overlap(&perp).unwrap().norm() < 1e-14);
    }

    #[test]
    fn orthogonal_state_is_antiunitary_involution_up_to_sign() {
        let mut rng = seeded_rng(5, 0);
        for _ in 0..50 {
            let psi = random_qubit(&mut rng);
            let perp = orthogonal_state(&psi).unwrap();
            assert!(psi.overlap(&perp).unwrap().norm() < 1e-14);
            let back = orthogonal_state(&perp).unwrap();
            // applying twice flips the global sign exactly
            for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
                assert!((a + b).norm() == 0.0);
            }
        }
    }

    #[test]
    fn symmetrization_examples() {
        let zero = PureState::qubit_zero();
        let one = PureState::qubit_one();

        let zz = symmetrized_ideal(&zero, &zero).unwrap();
        assert!((zz.amplitudes()[0] - cx(1.0, 0.0)).norm() < 1e-15);

        let sym = symmetrized_ideal(&one, &zero).unwrap();
        let (plus, _) = bell_states();
        assert_close(sym.overlap(&plus).unwrap().norm(), 1.0, 1e-14);

        // real alpha = beta = 1/sqrt2 against the hand expansion
        let s = 1.0 / 2.0f64.sqrt();
        let psi = PureState::new(vec![cx(s, 0.0), cx(s, 0.0)], SubsystemDims::single(2)).unwrap();
        let got = symmetrized_ideal(&psi, &zero).unwrap();
        let norm = 3.0f64.sqrt();
        let expect = [
            cx(2.0f64.sqrt() / norm, 0.0),
            cx(s / norm * 1.0, 0.0),
            cx(s / norm * 1.0, 0.0),
            cx(0.0, 0.0),
        ];
        for (a, b) in got.amplitudes().iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn symmetrization_is_swap_symmetric() {
        let mut rng = seeded_rng(9, 0);
        for _ in 0..50 {
            let a = random_qubit(&mut rng);
            let b = random_qubit(&mut rng);
            let ab = symmetrized_ideal(&a, &b).unwrap();
            let ba = symmetrized_ideal(&b, &a).unwrap();
            assert_close(ab.overlap(&ba).unwrap().norm(), 1.0, 1e-12);
        }
    }

    #[test]
    fn symmetrization_matches_bloch_parameterization() {
        // N(|psi>|0> + |0>|psi>) against the explicit two-qubit form
        // [2cos(t/2)|00> + sqrt2 e^{i phi} sin(t/2)|+>] / sqrt(2(1+cos^2(t/2)))
        let mut rng = seeded_rng(12, 0);
        for _ in 0..25 {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
            let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let psi = ket_from_bloch(BlochAngles::new(theta, phi).unwrap());
            let got = symmetrized_ideal(&psi, &PureState::qubit_zero()).unwrap();

            let c = (theta / 2.0).cos();
            let s = (theta / 2.0).sin();
            let norm = (2.0 * (1.0 + c * c)).sqrt();
            let phase = Complex64::from_polar(1.0, phi);
            let expect = [
                cx(2.0 * c / norm, 0.0),
                phase * (s / norm),
                phase * (s / norm),
                cx(0.0, 0.0),
            ];
            for (a, b) in got.amplitudes().iter().zip(expect.iter()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn antisymmetrization_examples() {
        let zero = PureState::qubit_zero();
        let one = PureState::qubit_one();
        let (_, minus) = bell_states();

        let anti = antisymmetrized_ideal(&one, &zero).unwrap();
        // equals -|-> entrywise
        for (a, b) in anti.amplitudes().iter().zip(minus.amplitudes()) {
            assert!((a + b).norm() < 1e-14);
        }

        assert!(matches!(
            antisymmetrized_ideal(&zero, &zero),
            Err(Error::DegenerateInput(_))
        ));

        let mut rng = seeded_rng(21, 0);
        for _ in 0..50 {
            let psi = random_qubit(&mut rng);
            if psi.amplitudes()[1].norm() < 1e-6 {
                continue; // effectively parallel to |0>
            }
            let anti = antisymmetrized_ideal(&psi, &zero).unwrap();
            assert_close(anti.overlap(&minus).unwrap().norm(), 1.0, 1e-12);
        }
    }

    #[test]
    fn bell_state_properties() {
        let (plus, minus) = bell_states();
        assert!(plus.overlap(&minus).unwrap().norm() < 1e-15);
        assert_close(plus.overlap(&plus).unwrap().re, 1.0, 1e-15);
        assert_close(minus.overlap(&minus).unwrap().re, 1.0, 1e-15);
        for keep in [0usize, 1] {
            let red = minus.density().partial_trace(&[keep]).unwrap();
            let half = ComplexMatrix::identity(2).scale(cx(0.5, 0.0));
            assert!(red.matrix().max_abs_diff(&half) < 1e-15);
        }
    }

    #[test]
    fn random_qubit_reproducible_and_uniform() {
        let mut a = seeded_rng(42, 0);
        let mut b = seeded_rng(42, 0);
        for _ in 0..10 {
            assert_eq!(random_qubit(&mut a), random_qubit(&mut b));
        }

        let mut rng = seeded_rng(7, 1);
        let n = 100_000;
        let (mut bx, mut by, mut bz, mut p0) = (0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let q = random_qubit(&mut rng);
            let a0 = q.amplitudes()[0];
            let a1 = q.amplitudes()[1];
            p0 += a0.norm_sqr();
            bz += a0.norm_sqr() - a1.norm_sqr();
            let cross = a0.conj() * a1;
            bx += 2.0 * cross.re;
            by += 2.0 * cross.im;
        }
        let inv = 1.0 / n as f64;
        let mean_len = ((bx * inv).powi(2) + (by * inv).powi(2) + (bz * inv).powi(2)).sqrt();
        assert!(mean_len < 0.02, "Bloch mean length {mean_len}");
        assert!(
            (p0 * inv - 0.5).abs() < 0.01,
            "mean |<0|psi>|^2 = {}",
            p0 * inv
        );
    }

    #[test]
    fn random_su2_is_unitary() {
        let mut rng = seeded_rng(3, 2);
        for _ in 0..20 {
            let u = random_su2(&mut rng);
            let uu = u.adjoint().mul(&u).unwrap();
            assert!(uu.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
        }
    }

    #[test]
    fn density_matrix_validation() {
        let (_, minus) = bell_states();
        let rho = minus.density();
        assert!(DensityMatrix::new(rho.matrix().clone(), rho.dims().clone()).is_ok());

        let bad = ComplexMatrix::identity(4); // trace 4
        assert!(DensityMatrix::new(bad, SubsystemDims::qubits(2)).is_err());
    }

    #[test]
    fn non_finite_inputs_are_rejected() {
        // NaN defeats tolerance comparisons, so it must be caught explicitly
        let nan = PureState::new(
            vec![cx(f64::NAN, 0.0), cx(0.0, 0.0)],
            SubsystemDims::single(2),
        );
        assert!(matches!(nan, Err(Error::InvalidValue(_))));

        let mut m = ComplexMatrix::identity(2).scale(cx(0.5, 0.0));
        m.set(0, 1, cx(0.0, f64::INFINITY));
        m.set(1, 0, cx(0.0, f64::NEG_INFINITY));
        assert!(DensityMatrix::new(m.clone(), SubsystemDims::single(2)).is_err());
        assert!(m.hermitian_eigenvalues().is_err());
    }
}
