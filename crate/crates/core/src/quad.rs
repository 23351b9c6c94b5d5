//! Quadrature rules for sphere averages.
//!
//! Polar integrals use Gauss–Legendre nodes in cos θ; azimuthal integrals use
//! the uniform trapezoid rule, which is spectrally accurate for periodic
//! integrands.

use crate::error::Error;
use crate::Result;

/// Gauss–Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; plenty for the orders (≤ a few
/// hundred) used here.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 2 {
        return Err(Error::QuadratureOrder(n));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    Ok((nodes, weights))
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0f64, x);
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Uniform azimuthal nodes on [0, 2π); each carries weight 2π/n.
pub fn azimuthal_nodes(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::QuadratureOrder(n));
    }
    Ok((0..n)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        .collect())
}

/// Average of `f(cos θ, φ)` over the unit sphere with the product rule
/// (`n_theta` Gauss–Legendre × `n_phi` trapezoid).
pub fn sphere_average<F>(n_theta: usize, n_phi: usize, mut f: F) -> Result<f64>
where
    F: FnMut(f64, f64) -> f64,
{
    let (nodes, weights) = gauss_legendre(n_theta)?;
    let phis = azimuthal_nodes(n_phi)?;
    let mut acc = 0.0;
    for (&u, &w) in nodes.iter().zip(&weights) {
        let mut phi_acc = 0.0;
        for &phi in &phis {
            phi_acc += f(u, phi);
        }
        acc += w * phi_acc / n_phi as f64;
    }
    // GL weights sum to 2; the sphere average carries 1/2 per polar axis.
    Ok(acc / 2.0)
}
