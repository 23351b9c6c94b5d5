//! The entangling procedures as executable channels: the measurement-based
//! strategy, controlled-SWAP post-selection, the optimal universal
//! symmetrization machine, the universal-NOT machine, and the constant
//! antisymmetric channel.

use crate::error::Error;
use crate::linalg::{cx, Complex64, ComplexMatrix, SubsystemDims};
use crate::states::{
    bell_states, ket_from_bloch, orthogonal_state, symmetrized_ideal, BlochAngles, DensityMatrix,
    PureState,
};
use crate::{Result, TOL_VANISHING_PROB};

/// Fidelity reached by the optimal symmetrization machine, (9 + 3√2)/14.
pub fn optimal_fidelity() -> f64 {
    (9.0 + 3.0 * 2.0f64.sqrt()) / 14.0
}

/// cos θ of the machine rotation; cos²θ equals the optimal fidelity.
pub fn machine_cos_theta() -> f64 {
    optimal_fidelity().sqrt()
}

/// sin θ of the machine rotation; sin²θ = (5 − 3√2)/14.
pub fn machine_sin_theta() -> f64 {
    ((5.0 - 3.0 * 2.0f64.sqrt()) / 14.0).sqrt()
}

/// Internal machine states of the optimal symmetrization entangler, expressed
/// in an orthonormal 3-dimensional machine basis.
#[derive(Debug, Clone)]
pub struct MachineVectors {
    pub w0: [Complex64; 3],
    pub w1: [Complex64; 3],
    pub x0: [Complex64; 3],
    pub x1: [Complex64; 3],
}

impl MachineVectors {
    /// The optimal machine: w0 = cos θ v₁, w1 = sin θ v₂, x0 = sin θ v₃,
    /// x1 = cos θ v₁.
    pub fn optimal() -> Self {
        let c = machine_cos_theta();
        let s = machine_sin_theta();
        let zero = Complex64::default();
        Self {
            w0: [cx(c, 0.0), zero, zero],
            w1: [zero, cx(s, 0.0), zero],
            x0: [zero, zero, cx(s, 0.0)],
            x1: [cx(c, 0.0), zero, zero],
        }
    }

    /// Residuals of the three unitarity constraints:
    /// ‖w0‖²+‖x0‖²−1, ‖w1‖²+‖x1‖²−1, and |⟨w0|w1⟩+⟨x0|x1⟩|.
    pub fn unitarity_defects(&self) -> (f64, f64, f64) {
        let n = |v: &[Complex64; 3]| v.iter().map(|a| a.norm_sqr()).sum::<f64>();
        let dot = |a: &[Complex64; 3], b: &[Complex64; 3]| -> Complex64 {
            a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
        };
        (
            n(&self.w0) + n(&self.x0) - 1.0,
            n(&self.w1) + n(&self.x1) - 1.0,
            (dot(&self.w0, &self.w1) + dot(&self.x0, &self.x1)).norm(),
        )
    }

    pub fn w0_norm_sqr(&self) -> f64 {
        self.w0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn x1_norm_sqr(&self) -> f64 {
        self.x1.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Alignment cos µ = (⟨x1|w0⟩ + ⟨w0|x1⟩) / (2‖w0‖²); the machine is
    /// optimal exactly when this reaches 1.
    pub fn cos_mu(&self) -> f64 {
        let dot: Complex64 = self
            .x1
            .iter()
            .zip(&self.w0)
            .map(|(x, w)| x.conj() * w)
            .sum();
        (dot + dot.conj()).re / (2.0 * self.w0_norm_sqr())
    }
}

/// Convenience alias for the optimal machine vectors.
pub fn optimal_entangler_machine() -> MachineVectors {
    MachineVectors::optimal()
}

/// Which post-selection branch a controlled-SWAP readout landed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapOutcome {
    Symmetric,
    Antisymmetric,
}

/// One branch of the controlled-SWAP post-selection. The state is absent when
/// the branch probability vanishes.
#[derive(Debug, Clone)]
pub struct PostSelectionResult {
    pub outcome: SwapOutcome,
    pub state: Option<PureState>,
    pub probability: f64,
}

/// A named single-qubit-in, two-qubit-out channel.
#[derive(Debug, Clone)]
pub struct EntanglerChannel {
    name: &'static str,
    realization: Realization,
}

#[derive(Debug, Clone)]
enum Realization {
    /// Isometry from the qubit input into a joint output⊗machine space; the
    /// listed factors survive the trace.
    Isometry {
        matrix: ComplexMatrix,
        joint_dims: SubsystemDims,
        output_factors: Vec<usize>,
    },
    /// Input-independent output.
    Constant { output: DensityMatrix },
}

impl EntanglerChannel {
    /// The optimal symmetrization machine: a 12×2 isometry into
    /// (two qubits) ⊗ (3-dimensional machine).
    pub fn optimal() -> Self {
        let c = machine_cos_theta();
        let s = machine_sin_theta();
        let r = 1.0 / 2.0f64.sqrt();
        let mut m = ComplexMatrix::zeros(12, 2);
        // joint index = (two-qubit index) * 3 + machine index
        // input |0>: cosθ |00>|v1> + sinθ |+>|v3>
        m.set(0, 0, cx(c, 0.0)); // |00> v1
        m.set(5, 0, cx(s * r, 0.0)); // |01> v3
        m.set(8, 0, cx(s * r, 0.0)); // |10> v3
                                     // input |1>: sinθ |00>|v2> + cosθ |+>|v1>
        m.set(1, 1, cx(s, 0.0)); // |00> v2
        m.set(3, 1, cx(c * r, 0.0)); // |01> v1
        m.set(6, 1, cx(c * r, 0.0)); // |10> v1
        Self {
            name: "optimal",
            realization: Realization::Isometry {
                matrix: m,
                joint_dims: SubsystemDims::new(vec![2, 2, 3]).unwrap(),
                output_factors: vec![0, 1],
            },
        }
    }

    /// The universal-NOT machine as an 8×2 isometry into three qubits; the
    /// first two qubits are the entangled output.
    pub fn unot() -> Self {
        let g0 = (2.0f64 / 3.0).sqrt();
        let g1 = -(1.0f64 / 3.0).sqrt();
        let r = 1.0 / 2.0f64.sqrt();
        let mut m = ComplexMatrix::zeros(8, 2);
        // input |0>, complement -|1>:
        //   g0 |00>(-|1>) + g1 (|0(-1)> + |(-1)0>)/sqrt2 |0>
        m.set(0b001, 0, cx(-g0, 0.0));
        m.set(0b010, 0, cx(-g1 * r, 0.0));
        m.set(0b100, 0, cx(-g1 * r, 0.0));
        // input |1>, complement |0>:
        //   g0 |11>|0> + g1 (|10> + |01>)/sqrt2 |1>
        m.set(0b110, 1, cx(g0, 0.0));
        m.set(0b101, 1, cx(g1 * r, 0.0));
        m.set(0b011, 1, cx(g1 * r, 0.0));
        Self {
            name: "unot",
            realization: Realization::Isometry {
                matrix: m,
                joint_dims: SubsystemDims::qubits(3),
                output_factors: vec![0, 1],
            },
        }
    }

    /// The constant antisymmetric channel: every input maps to the
    /// antisymmetric Bell state.
    pub fn antisymmetric() -> Self {
        let (_, minus) = bell_states();
        Self {
            name: "antisymmetric",
            realization: Realization::Constant {
                output: minus.density(),
            },
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "optimal" => Ok(Self::optimal()),
            "unot" => Ok(Self::unot()),
            "antisymmetric" | "antisym" => Ok(Self::antisymmetric()),
            other => Err(Error::UnknownChannel(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Apply to a single-qubit input.
    pub fn apply(&self, psi: &PureState) -> Result<DensityMatrix> {
        if !psi.is_qubit() {
            return Err(Error::DimensionMismatch(format!(
                "channel input must be a qubit, got dimension {}",
                psi.dim()
            )));
        }
        match &self.realization {
            Realization::Isometry {
                matrix,
                joint_dims,
                output_factors,
            } => {
                let joint = matrix.mul_vec(psi.amplitudes())?;
                let joint_state = PureState::new(joint, joint_dims.clone())?;
                joint_state.density().partial_trace(output_factors)
            }
            Realization::Constant { output } => Ok(output.clone()),
        }
    }

    /// The isometry matrix, when this channel has one.
    pub fn isometry(&self) -> Option<&ComplexMatrix> {
        match &self.realization {
            Realization::Isometry { matrix, .. } => Some(matrix),
            Realization::Constant { .. } => None,
        }
    }

    /// Max-abs deviation of V†V from the identity on the input space;
    /// zero for constant channels.
    pub fn isometry_defect(&self) -> f64 {
        match &self.realization {
            Realization::Isometry { matrix, .. } => {
                let gram = matrix.adjoint().mul(matrix).expect("shapes agree");
                gram.max_abs_diff(&ComplexMatrix::identity(gram.rows()))
            }
            Realization::Constant { .. } => 0.0,
        }
    }
}

/// Optimal symmetrization machine applied through its isometry.
pub fn apply_optimal_entangler(psi: &PureState) -> Result<DensityMatrix> {
    EntanglerChannel::optimal().apply(psi)
}

/// Weighted-projector form of the optimal machine output, used as the
/// independent cross-check of the isometry route.
pub fn optimal_output_closed_form(psi: &PureState) -> Result<DensityMatrix> {
    if !psi.is_qubit() {
        return Err(Error::DimensionMismatch("qubit input required".into()));
    }
    let alpha = psi.amplitudes()[0];
    let beta = psi.amplitudes()[1];
    let c2 = optimal_fidelity();
    let s2 = 1.0 - c2;
    let a2 = alpha.norm_sqr();
    let b2 = beta.norm_sqr();

    let r = 1.0 / 2.0f64.sqrt();
    let e00 = [cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)];
    let plus = [cx(0.0, 0.0), cx(r, 0.0), cx(r, 0.0), cx(0.0, 0.0)];

    let p00 = ComplexMatrix::outer(&e00, &e00);
    let ppp = ComplexMatrix::outer(&plus, &plus);
    let cross = ComplexMatrix::outer(&e00, &plus); // |00><+|

    let mut m = p00.scale(cx(a2 * c2 + b2 * s2, 0.0));
    m = m.add(&ppp.scale(cx(a2 * s2 + b2 * c2, 0.0)))?;
    m = m.add(&cross.scale(alpha * beta.conj() * c2))?;
    m = m.add(&cross.adjoint().scale(alpha.conj() * beta * c2))?;
    DensityMatrix::new(m, SubsystemDims::qubits(2))
}

/// U-NOT machine on a qubit. Returns the entangled two-qubit output, the
/// complement qubit, and the full three-qubit pure state.
pub fn apply_unot_entangler(psi: &PureState) -> Result<(DensityMatrix, DensityMatrix, PureState)> {
    let full = unot_full_state(psi)?;
    let rho = full.density();
    let ab = rho.partial_trace(&[0, 1])?;
    let c = rho.partial_trace(&[2])?;
    Ok((ab, c, full))
}

/// Direct construction of the three-qubit U-NOT output
/// γ₀|ψψ⟩|ψ⊥⟩ + γ₁|{ψ,ψ⊥}⟩|ψ⟩ with γ₀ = √(2/3), γ₁ = −√(1/3).
pub fn unot_full_state(psi: &PureState) -> Result<PureState> {
    if !psi.is_qubit() {
        return Err(Error::DimensionMismatch("qubit input required".into()));
    }
    let perp = orthogonal_state(psi)?;
    let g0 = cx((2.0f64 / 3.0).sqrt(), 0.0);
    let g1 = cx(-(1.0f64 / 3.0).sqrt(), 0.0);
    let r = cx(1.0 / 2.0f64.sqrt(), 0.0);

    let clone_pair = psi.tensor(psi).tensor(&perp);
    let sym_a = psi.tensor(&perp).tensor(psi);
    let sym_b = perp.tensor(psi).tensor(psi);

    let amplitudes: Vec<Complex64> = (0..8)
        .map(|i| {
            g0 * clone_pair.amplitudes()[i]
                + g1 * r * (sym_a.amplitudes()[i] + sym_b.amplitudes()[i])
        })
        .collect();
    PureState::new(amplitudes, SubsystemDims::qubits(3))
}

/// Ideal target of the U-NOT entangler, (|ψ⟩|ψ⊥⟩ + |ψ⊥⟩|ψ⟩)/√2.
pub fn unot_ideal_target(psi: &PureState) -> Result<PureState> {
    let perp = orthogonal_state(psi)?;
    symmetrized_ideal(psi, &perp)
}

/// Controlled-SWAP: |0⟩|ψ⟩|φ⟩ is unchanged, |1⟩|ψ⟩|φ⟩ swaps the targets.
pub fn controlled_swap(control: &PureState, psi: &PureState, phi: &PureState) -> Result<PureState> {
    if !control.is_qubit() {
        return Err(Error::DimensionMismatch("control must be a qubit".into()));
    }
    if psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "swap targets have dimensions {} and {}",
            psi.dim(),
            phi.dim()
        )));
    }
    let d = psi.dim();
    let c0 = control.amplitudes()[0];
    let c1 = control.amplitudes()[1];
    let pq = psi.tensor(phi);
    let qp = phi.tensor(psi);
    let mut amplitudes = vec![Complex64::default(); 2 * d * d];
    for i in 0..d * d {
        amplitudes[i] = c0 * pq.amplitudes()[i];
        amplitudes[d * d + i] = c1 * qp.amplitudes()[i];
    }
    PureState::new(amplitudes, SubsystemDims::new(vec![2, d, d])?)
}

/// Feed |v₊⟩|ψ⟩|φ⟩ through the controlled-SWAP and read the control in the
/// |v±⟩ basis. The symmetric branch appears with probability
/// (1 + |⟨ψ|φ⟩|²)/2, the antisymmetric with (1 − |⟨ψ|φ⟩|²)/2.
pub fn swap_post_select(
    psi: &PureState,
    phi: &PureState,
) -> Result<(PostSelectionResult, PostSelectionResult)> {
    let r = 1.0 / 2.0f64.sqrt();
    let v_plus = PureState::new(vec![cx(r, 0.0), cx(r, 0.0)], SubsystemDims::single(2))?;
    let out = controlled_swap(&v_plus, psi, phi)?;

    let d2 = psi.dim() * psi.dim();
    let mut sym = vec![Complex64::default(); d2];
    let mut anti = vec![Complex64::default(); d2];
    for i in 0..d2 {
        let a0 = out.amplitudes()[i];
        let a1 = out.amplitudes()[d2 + i];
        sym[i] = (a0 + a1) * r;
        anti[i] = (a0 - a1) * r;
    }
    let dims = SubsystemDims::new(vec![psi.dim(), psi.dim()])?;
    let branch = |vec: Vec<Complex64>, outcome: SwapOutcome| -> Result<PostSelectionResult> {
        let probability: f64 = vec.iter().map(|a| a.norm_sqr()).sum();
        let state = if probability < TOL_VANISHING_PROB {
            None
        } else {
            Some(PureState::normalized(vec, dims.clone())?)
        };
        Ok(PostSelectionResult {
            outcome,
            state,
            probability,
        })
    };
    Ok((
        branch(sym, SwapOutcome::Symmetric)?,
        branch(anti, SwapOutcome::Antisymmetric)?,
    ))
}

/// Measure-and-prepare output for one fixed measurement direction η:
/// |⟨ψ|η⟩|² on the symmetrized η branch plus |⟨ψ|η⊥⟩|² on the symmetrized
/// η⊥ branch.
pub fn measurement_entangler_single(psi: &PureState, eta: BlochAngles) -> Result<DensityMatrix> {
    if !psi.is_qubit() {
        return Err(Error::DimensionMismatch("qubit input required".into()));
    }
    let matrix = measurement_output_matrix(psi, eta)?;
    DensityMatrix::new(matrix, SubsystemDims::qubits(2))
}

fn measurement_output_matrix(psi: &PureState, eta: BlochAngles) -> Result<ComplexMatrix> {
    let eta_state = ket_from_bloch(eta);
    let eta_perp = orthogonal_state(&eta_state)?;
    let zero = PureState::qubit_zero();

    let w_plus = eta_state.overlap(psi)?.norm_sqr();
    let w_minus = eta_perp.overlap(psi)?.norm_sqr();

    let branch_plus = symmetrized_ideal(&eta_state, &zero)?;
    let branch_minus = symmetrized_ideal(&eta_perp, &zero)?;

    let p = ComplexMatrix::outer(branch_plus.amplitudes(), branch_plus.amplitudes());
    let q = ComplexMatrix::outer(branch_minus.amplitudes(), branch_minus.amplitudes());
    p.scale(cx(w_plus, 0.0)).add(&q.scale(cx(w_minus, 0.0)))
}

/// Sphere average of [`measurement_entangler_single`] over the measurement
/// direction (Gauss–Legendre in cos θ′ × trapezoid in φ′).
pub fn measurement_entangler_averaged(
    psi: &PureState,
    n_theta: usize,
    n_phi: usize,
) -> Result<DensityMatrix> {
    if !psi.is_qubit() {
        return Err(Error::DimensionMismatch("qubit input required".into()));
    }
    let (nodes, weights) = crate::quad::gauss_legendre(n_theta)?;
    let phis = crate::quad::azimuthal_nodes(n_phi)?;
    let mut acc = ComplexMatrix::zeros(4, 4);
    for (&u, &w) in nodes.iter().zip(&weights) {
        let theta = u.clamp(-1.0, 1.0).acos();
        for &phi in &phis {
            let eta = BlochAngles::new(theta, phi)?;
            let m = measurement_output_matrix(psi, eta)?;
            acc = acc.add(&m.scale(cx(w / (2.0 * n_phi as f64), 0.0)))?;
        }
    }
    DensityMatrix::new(acc, SubsystemDims::qubits(2))
}

/// The constant antisymmetric channel: any qubit input yields the
/// antisymmetric Bell state.
pub fn antisymmetric_entangler(psi: &PureState) -> Result<DensityMatrix> {
    if !psi.is_qubit() {
        return Err(Error::DimensionMismatch("qubit input required".into()));
    }
    let (_, minus) = bell_states();
    Ok(minus.density())
}

/// Project qubit C of the U-NOT output onto |outcome⟩. Returns the normalized
/// AB state and the outcome probability; outcome 1 leaves the symmetrization
/// of ψ with |0⟩, outcome 0 the symmetrization with |1⟩.
pub fn charlie_protocol(psi: &PureState, outcome: u8) -> Result<(PureState, f64)> {
    if outcome > 1 {
        return Err(Error::InvalidValue(format!(
            "measurement outcome must be 0 or 1, got {outcome}"
        )));
    }
    let full = unot_full_state(psi)?;
    let ab: Vec<Complex64> = (0..4)
        .map(|i| full.amplitudes()[2 * i + outcome as usize])
        .collect();
    let probability: f64 = ab.iter().map(|a| a.norm_sqr()).sum();
    if probability < TOL_VANISHING_PROB {
        return Err(Error::VanishingProbability { probability });
    }
    let state = PureState::normalized(ab, SubsystemDims::qubits(2))?;
    Ok((state, probability))
}
