//! Figures of merit: fidelity to a pure target, Bures and Hilbert–Schmidt
//! distances, von Neumann entropy, and the minimal eigenvalue of the partial
//! transpose (the two-qubit inseparability witness).

use crate::error::Error;
use crate::states::{DensityMatrix, PureState};
use crate::Result;

/// A named scalar diagnostic attached to a described input.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MetricValue {
    pub name: String,
    pub value: f64,
    pub input_tag: String,
}

impl MetricValue {
    pub fn new(name: impl Into<String>, value: f64, input_tag: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            value,
            input_tag: input_tag.into(),
        }
    }
}

/// Fidelity ⟨φ|ρ|φ⟩ of a state against a pure target.
pub fn fidelity_pure(rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    if rho.dim() != target.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} vs target dimension {}",
            rho.dim(),
            target.dim()
        )));
    }
    let v = rho.matrix().mul_vec(target.amplitudes())?;
    let f: num_complex::Complex<f64> = target
        .amplitudes()
        .iter()
        .zip(&v)
        .map(|(a, b)| a.conj() * b)
        .sum();
    debug_assert!(f.im.abs() < 1e-10);
    Ok(f.re)
}

/// Bures distance √2 (1 − Tr√(√ρ₁ ρ₂ √ρ₁))^{1/2}.
///
/// When either argument is pure the eigensolve collapses to the overlap
/// shortcut; both routes agree and the general route stays available as
/// [`bures_distance_via_sqrt`].
pub fn bures_distance(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    check_same_dim(rho1, rho2)?;
    let purity2 = purity(rho2);
    if (purity2 - 1.0).abs() < 1e-12 {
        let overlap = trace_product(rho1, rho2);
        return Ok(bures_from_root_fidelity(overlap.max(0.0).sqrt()));
    }
    let purity1 = purity(rho1);
    if (purity1 - 1.0).abs() < 1e-12 {
        let overlap = trace_product(rho1, rho2);
        return Ok(bures_from_root_fidelity(overlap.max(0.0).sqrt()));
    }
    bures_distance_via_sqrt(rho1, rho2)
}

/// General Bures route through matrix square roots of both factors.
pub fn bures_distance_via_sqrt(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    check_same_dim(rho1, rho2)?;
    let root1 = rho1.matrix().matrix_sqrt_psd()?;
    let inner = root1.mul(rho2.matrix())?.mul(&root1)?.hermitized();
    let eigenvalues = inner.hermitian_eigenvalues()?;
    if eigenvalues[0] < crate::TOL_PSD_REJECT {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: eigenvalues[0],
        });
    }
    // the square root amplifies eigensolver noise (sqrt(1e-16) ~ 1e-8), so
    // rounding-level eigenvalues must not enter the trace
    let tr_root: f64 = eigenvalues
        .iter()
        .map(|&v| if v > 1e-13 { v.sqrt() } else { 0.0 })
        .sum();
    Ok(bures_from_root_fidelity(tr_root))
}

fn bures_from_root_fidelity(tr_root: f64) -> f64 {
    // same amplification at the outer square root: a rounding-level gap means
    // equal states, not a distance of ~1e-8
    let gap = 1.0 - tr_root;
    if gap < 1e-14 {
        return 0.0;
    }
    (2.0 * gap).sqrt()
}

/// Hilbert–Schmidt distance [Tr(ρ₁ − ρ₂)²]^{1/2}.
pub fn hs_distance(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    check_same_dim(rho1, rho2)?;
    let diff = rho1.matrix().sub(rho2.matrix())?;
    Ok(diff.frobenius_norm())
}

/// Hilbert–Schmidt distance to a pure target via [1 − 2F + Tr ρ²]^{1/2}.
pub fn hs_distance_to_pure(rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    let f = fidelity_pure(rho, target)?;
    let p = purity(rho);
    Ok((1.0 - 2.0 * f + p).max(0.0).sqrt())
}

/// Von Neumann entropy −Tr ρ ln ρ (natural log; eigenvalues below 1e-12
/// contribute zero).
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eigenvalues = rho.matrix().hermitian_eigenvalues()?;
    Ok(eigenvalues
        .iter()
        .map(|&v| if v > 1e-12 { -v * v.ln() } else { 0.0 })
        .sum())
}

/// Minimal eigenvalue of the partial transpose over the second qubit; a
/// negative value certifies inseparability.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims().factors() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "partial-transpose witness needs two qubits, got factors {:?}",
            rho.dims().factors()
        )));
    }
    let pt = rho.matrix().partial_transpose(rho.dims(), 1)?;
    Ok(pt.hermitian_eigenvalues()?[0])
}

fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix()
        .entries()
        .iter()
        .map(|e| e.norm_sqr())
        .sum::<f64>()
}

/// Tr(ρ₁ ρ₂), real for Hermitian inputs.
fn trace_product(rho1: &DensityMatrix, rho2: &DensityMatrix) -> f64 {
    let n = rho1.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (rho1.matrix().get(i, j) * rho2.matrix().get(j, i)).re;
        }
    }
    acc
}

fn check_same_dim(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<()> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "distance between dimensions {} and {}",
            rho1.dim(),
            rho2.dim()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cx, ComplexMatrix, SubsystemDims};
    use crate::states::{
        bell_states, random_qubit, random_su2, seeded_rng, symmetrized_ideal, DensityMatrix,
        PureState,
    };

    fn maximally_mixed(n: usize) -> DensityMatrix {
        DensityMatrix::new(
            ComplexMatrix::identity(n).scale(cx(1.0 / n as f64, 0.0)),
            if n == 4 {
                SubsystemDims::qubits(2)
            } else {
                SubsystemDims::single(n)
            },
        )
        .unwrap()
    }

    #[test]
    fn fidelity_basics() {
        let (plus, minus) = bell_states();
        assert!((fidelity_pure(&plus.density(), &plus).unwrap() - 1.0).abs() < 1e-14);
        assert!(fidelity_pure(&plus.density(), &minus).unwrap().abs() < 1e-14);
        assert!((fidelity_pure(&maximally_mixed(4), &plus).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn fidelity_two_routes_agree() {
        let mut rng = seeded_rng(1, 0);
        for _ in 0..25 {
            let a = random_qubit(&mut rng);
            let b = random_qubit(&mut rng);
            let target = symmetrized_ideal(&a, &b).unwrap();
            let rho = maximally_mixed(4);
            let direct = fidelity_pure(&rho, &target).unwrap();
            let via_trace = trace_product(&rho, &target.density());
            assert!((direct - via_trace).abs() < 1e-12);
        }
    }

    #[test]
    fn bures_endpoints() {
        let (plus, minus) = bell_states();
        let same = bures_distance(&plus.density(), &plus.density()).unwrap();
        assert!(same.abs() < 1e-9);
        let orth = bures_distance(&plus.density(), &minus.density()).unwrap();
        assert!((orth - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bures_symmetric_and_routes_agree() {
        let mut rng = seeded_rng(2, 0);
        let (plus, _) = bell_states();
        let mixed = maximally_mixed(4);
        let d12 = bures_distance(&mixed, &plus.density()).unwrap();
        let d21 = bures_distance(&plus.density(), &mixed).unwrap();
        assert!((d12 - d21).abs() < 1e-9);

        for _ in 0..10 {
            let a = random_qubit(&mut rng);
            let b = random_qubit(&mut rng);
            let target = symmetrized_ideal(&a, &b).unwrap();
            let shortcut = bures_distance(&mixed, &target.density()).unwrap();
            let general = bures_distance_via_sqrt(&mixed, &target.density()).unwrap();
            assert!((shortcut - general).abs() < 1e-9, "{shortcut} vs {general}");
        }
    }

    #[test]
    fn bures_pure_pure_reduces_to_overlap() {
        let mut rng = seeded_rng(3, 0);
        for _ in 0..25 {
            let a = random_qubit(&mut rng);
            let b = random_qubit(&mut rng);
            let d = bures_distance(&a.density(), &b.density()).unwrap();
            let ov = a.overlap(&b).unwrap().norm();
            let expect = (2.0 * (1.0 - ov)).max(0.0).sqrt();
            assert!((d - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn hs_distance_cases() {
        let (plus, _) = bell_states();
        assert!(hs_distance(&plus.density(), &plus.density()).unwrap() < 1e-15);

        let half = maximally_mixed(2);
        let zero = PureState::qubit_zero().density();
        let d = hs_distance(&half, &zero).unwrap();
        assert!((d - 1.0 / 2.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn hs_pure_form_agrees() {
        let mut rng = seeded_rng(4, 0);
        let mixed = maximally_mixed(4);
        for _ in 0..25 {
            let a = random_qubit(&mut rng);
            let b = random_qubit(&mut rng);
            let target = symmetrized_ideal(&a, &b).unwrap();
            let d1 = hs_distance(&mixed, &target.density()).unwrap();
            let d2 = hs_distance_to_pure(&mixed, &target).unwrap();
            assert!((d1 - d2).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_values() {
        let (plus, _) = bell_states();
        assert!(von_neumann_entropy(&plus.density()).unwrap() < 1e-10);
        let half = maximally_mixed(2);
        assert!((von_neumann_entropy(&half).unwrap() - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn entropy_is_basis_invariant() {
        let mut rng = seeded_rng(5, 0);
        let mixed_ish = {
            // random two-qubit mixture of two pure states
            let a = random_qubit(&mut rng).tensor(&random_qubit(&mut rng));
            let b = random_qubit(&mut rng).tensor(&random_qubit(&mut rng));
            let m = a
                .density()
                .matrix()
                .scale(cx(0.3, 0.0))
                .add(&b.density().matrix().scale(cx(0.7, 0.0)))
                .unwrap();
            DensityMatrix::new(m, SubsystemDims::qubits(2)).unwrap()
        };
        let s0 = von_neumann_entropy(&mixed_ish).unwrap();
        for _ in 0..10 {
            let u = random_su2(&mut rng).kron(&random_su2(&mut rng));
            let rotated = u
                .mul(mixed_ish.matrix())
                .unwrap()
                .mul(&u.adjoint())
                .unwrap()
                .hermitized();
            let rho = DensityMatrix::new(rotated, SubsystemDims::qubits(2)).unwrap();
            assert!((von_neumann_entropy(&rho).unwrap() - s0).abs() < 1e-10);
        }
    }

    #[test]
    fn ppt_product_state_is_nonnegative() {
        let mut rng = seeded_rng(6, 0);
        for _ in 0..25 {
            let prod = random_qubit(&mut rng).tensor(&random_qubit(&mut rng));
            let e = ppt_min_eigenvalue(&prod.density()).unwrap();
            assert!(e.abs() < 1e-10, "separable state shows {e}");
        }
    }

    #[test]
    fn ppt_factor_choice_is_irrelevant() {
        let mut rng = seeded_rng(7, 0);
        for _ in 0..25 {
            let a = random_qubit(&mut rng);
            let b = random_qubit(&mut rng);
            let rho = symmetrized_ideal(&a, &b).unwrap().density();
            let e1 = ppt_min_eigenvalue(&rho).unwrap();
            let pt0 = rho.matrix().partial_transpose(rho.dims(), 0).unwrap();
            let e0 = pt0.hermitian_eigenvalues().unwrap()[0];
            assert!((e1 - e0).abs() < 1e-12);
        }
    }

    #[test]
    fn ppt_rejects_wrong_shape() {
        let three = DensityMatrix::new(
            ComplexMatrix::identity(3).scale(cx(1.0 / 3.0, 0.0)),
            SubsystemDims::single(3),
        )
        .unwrap();
        assert!(ppt_min_eigenvalue(&three).is_err());
    }
}
