//! Quadrature rules.
//!
//! Averages over a uniformly distributed phase are integrals of trigonometric
//! polynomials. The `M`-point uniform rule on `[0, 2π)` integrates every
//! harmonic `e^{ikφ}` with `|k| < M` exactly, so picking `M` above the degree
//! of the integrand removes quadrature error entirely.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Node count used for an integrand whose highest harmonic is `degree`.
pub fn periodic_node_count(degree: usize) -> usize {
    2 * degree + 4
}

/// Equally spaced phases `2πk/count`, `k = 0..count`.
pub fn periodic_nodes(count: usize) -> impl Iterator<Item = f64> + Clone {
    (0..count).map(move |k| TAU * k as f64 / count as f64)
}

/// `(1/2π) ∫₀^{2π} f(φ) dφ` with the `count`-point uniform rule.
pub fn periodic_mean<F: FnMut(f64) -> f64>(count: usize, mut f: F) -> f64 {
    assert!(count > 0, "periodic rule needs at least one node");
    periodic_nodes(count).map(&mut f).sum::<f64>() / count as f64
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let order = NonZeroUsize::new(order).expect("Gauss-Legendre order must be positive");
    GaussLegendre::new(order)
        .iter()
        .map(|(x, w)| (*x, *w))
        .collect()
}
