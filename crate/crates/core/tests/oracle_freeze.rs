//! Recompute every frozen expected value through the crate's own code paths
//! and through a second, structurally different route, then compare all three.
//! A drift in either the library or the frozen file trips this suite.

use entangler_core::entanglers::{apply_optimal_entangler, optimal_fidelity};
use entangler_core::experiments::{
    measurement_fidelity_closed_form, measurement_fidelity_quadrature,
    measurement_fidelity_quadrature_unit_trace, measurement_fidelity_unit_trace_closed_form,
};
use entangler_core::frozen;
use entangler_core::linalg::{cx, SubsystemDims};
use entangler_core::metrics::{
    bures_distance, hs_distance, ppt_min_eigenvalue, von_neumann_entropy,
};
use entangler_core::states::{symmetrized_ideal, PureState};

fn real_qubit(alpha: f64) -> PureState {
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    PureState::new(
        vec![cx(alpha, 0.0), cx(beta, 0.0)],
        SubsystemDims::single(2),
    )
    .unwrap()
}

fn assert_close(label: &str, a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() < tol, "{label}: {a} vs {b}");
}

#[test]
fn ppt_output_endpoints() {
    let c2 = optimal_fidelity();
    let s2 = 1.0 - c2;
    let radical = (c2 * c2 + s2 * s2).sqrt();

    // route 1: closed form from the 2x2 block structure
    let closed_0 = 0.5 * (s2 - radical);
    let closed_1 = 0.5 * (c2 - radical);
    assert_close(
        "alpha=0 closed",
        closed_0,
        frozen::PPT_OUTPUT_MIN_EIG_ALPHA_0,
        1e-12,
    );
    assert_close(
        "alpha=1 closed",
        closed_1,
        frozen::PPT_OUTPUT_MIN_EIG_ALPHA_1,
        1e-12,
    );

    // route 2: full machine output plus the Jacobi eigensolver
    let via_machine_0 =
        ppt_min_eigenvalue(&apply_optimal_entangler(&real_qubit(0.0)).unwrap()).unwrap();
    let via_machine_1 =
        ppt_min_eigenvalue(&apply_optimal_entangler(&real_qubit(1.0)).unwrap()).unwrap();
    assert_close(
        "alpha=0 machine",
        via_machine_0,
        frozen::PPT_OUTPUT_MIN_EIG_ALPHA_0,
        1e-9,
    );
    assert_close(
        "alpha=1 machine",
        via_machine_1,
        frozen::PPT_OUTPUT_MIN_EIG_ALPHA_1,
        1e-9,
    );
}

#[test]
fn output_entropy_ratio_at_maximally_entangling_input() {
    let c2 = optimal_fidelity();
    let s2 = 1.0 - c2;
    let ln2 = std::f64::consts::LN_2;

    // route 1: the reduced state is diag(s2 + c2/2, c2/2)
    let p = s2 + c2 / 2.0;
    let q = c2 / 2.0;
    let closed = (-p * p.ln() - q * q.ln()) / ln2;
    assert_close(
        "closed",
        closed,
        frozen::OUTPUT_SINGLE_QUBIT_ENTROPY_RATIO_ALPHA_0,
        1e-12,
    );

    // route 2: machine output, partial trace, eigensolver entropy
    let rho = apply_optimal_entangler(&real_qubit(0.0)).unwrap();
    let reduced = rho.partial_trace(&[0]).unwrap();
    let via_machine = von_neumann_entropy(&reduced).unwrap() / ln2;
    assert_close(
        "machine",
        via_machine,
        frozen::OUTPUT_SINGLE_QUBIT_ENTROPY_RATIO_ALPHA_0,
        1e-9,
    );
}

#[test]
fn measurement_averages() {
    assert_close(
        "primary closed form",
        measurement_fidelity_closed_form(),
        frozen::MEASUREMENT_AVG_FIDELITY,
        1e-12,
    );
    assert_close(
        "primary quadrature",
        measurement_fidelity_quadrature(48, 48).unwrap(),
        frozen::MEASUREMENT_AVG_FIDELITY,
        1e-9,
    );
    assert_close(
        "unit-trace closed form",
        measurement_fidelity_unit_trace_closed_form(),
        frozen::MEASUREMENT_AVG_FIDELITY_UNIT_TRACE,
        1e-12,
    );
    assert_close(
        "unit-trace quadrature",
        measurement_fidelity_quadrature_unit_trace(48, 48).unwrap(),
        frozen::MEASUREMENT_AVG_FIDELITY_UNIT_TRACE,
        1e-9,
    );
}

#[test]
fn optimal_output_distances() {
    // route 1: closed forms in F = cos^2(theta)
    let f = optimal_fidelity();
    assert_close(
        "bures closed",
        (2.0 - 2.0 * f.sqrt()).sqrt(),
        frozen::BURES_OPTIMAL_OUTPUT,
        1e-12,
    );
    let hs_closed = |a: f64| -> f64 {
        let am_b = (2.0 * a - 1.0) * (2.0 * f - 1.0);
        let d = f * (a * (1.0 - a)).sqrt();
        let purity = 0.5 * (1.0 + am_b * am_b) + 2.0 * d * d;
        (1.0 - 2.0 * f + purity).sqrt()
    };
    assert_close(
        "hs endpoints closed",
        hs_closed(0.0),
        frozen::HS_OPTIMAL_OUTPUT_ENDPOINTS,
        1e-12,
    );
    assert_close(
        "hs balanced closed",
        hs_closed(0.5),
        frozen::HS_OPTIMAL_OUTPUT_BALANCED,
        1e-12,
    );

    // route 2: machine outputs and the metric implementations
    let zero = PureState::qubit_zero();
    for (alpha, expect_hs) in [
        (0.0, frozen::HS_OPTIMAL_OUTPUT_ENDPOINTS),
        (1.0, frozen::HS_OPTIMAL_OUTPUT_ENDPOINTS),
        (0.5f64.sqrt(), frozen::HS_OPTIMAL_OUTPUT_BALANCED),
    ] {
        let psi = real_qubit(alpha);
        let rho = apply_optimal_entangler(&psi).unwrap();
        let target = symmetrized_ideal(&psi, &zero).unwrap();
        assert_close(
            "bures machine",
            bures_distance(&rho, &target.density()).unwrap(),
            frozen::BURES_OPTIMAL_OUTPUT,
            1e-9,
        );
        assert_close(
            "hs machine",
            hs_distance(&rho, &target.density()).unwrap(),
            expect_hs,
            1e-9,
        );
    }
}
