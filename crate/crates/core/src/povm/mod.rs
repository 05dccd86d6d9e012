//! Rank-one POVMs over the span of an encoding, estimation strategies, and
//! their evaluation.
//!
//! A POVM element is stored as a weight `C_r > 0` and a unit coefficient
//! vector `λ_r` over an orthonormal span basis; the operator is
//! `E_r = C_r |λ_r⟩⟨λ_r|` and its outcome probability on a state with
//! coordinates `μ` is `C_r |⟨λ_r|μ⟩|²`. Completeness means
//! `Σ_r C_r λ_r λ_r† = I`.

mod builders;
mod fidelity;
mod optimize;
mod scenario;
mod search;

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::bloch::normalize_phase;
use crate::{Error, Result, C64, STRUCTURAL_TOL};

pub use builders::{
    fourier4_antiparallel_strategy, fourier_povm, fourier_strategy_single_circle,
    opposite_antiparallel_strategy, opposite_parallel_strategy, two_circle_strategy,
};
pub use fidelity::{
    average_fidelity, average_fidelity_with_nodes, monte_carlo_fidelity, McEstimate,
};
pub use optimize::{optimize_strategy, OptimizationResult};
pub use scenario::{Alignment, Scenario};
pub use search::{certify_bound, hill_climb_phases, CertificationReport};

/// One weighted rank-one element `C_r |λ_r⟩⟨λ_r|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PovmElement {
    pub weight: f64,
    pub coeffs: Vec<C64>,
}

impl PovmElement {
    pub fn new(weight: f64, coeffs: Vec<C64>) -> Self {
        Self { weight, coeffs }
    }

    /// `C |⟨λ|μ⟩|²`.
    pub fn probability(&self, state: &[C64]) -> f64 {
        let amp: C64 = self
            .coeffs
            .iter()
            .zip(state)
            .map(|(l, m)| l.conj() * m)
            .sum();
        self.weight * amp.norm_sqr()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Povm {
    dim: usize,
    elements: Vec<PovmElement>,
}

impl Povm {
    /// Builds a POVM without checking positivity or completeness; use
    /// [`validate_povm`] for that. Only coefficient lengths are checked.
    pub fn new(dim: usize, elements: Vec<PovmElement>) -> Result<Self> {
        if let Some((r, e)) = elements
            .iter()
            .enumerate()
            .find(|(_, e)| e.coeffs.len() != dim)
        {
            return Err(Error::LengthMismatch(format!(
                "element {r} has {} coefficients, expected {dim}",
                e.coeffs.len()
            )));
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }

    pub fn elements_mut(&mut self) -> &mut [PovmElement] {
        &mut self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn probabilities(&self, state: &[C64]) -> Vec<f64> {
        self.elements.iter().map(|e| e.probability(state)).collect()
    }

    /// `Σ_r C_r λ_r λ_r†` as a row-major `dim × dim` matrix.
    pub fn completeness_matrix(&self) -> Vec<C64> {
        let d = self.dim;
        let mut s = vec![C64::new(0.0, 0.0); d * d];
        for e in &self.elements {
            for j in 0..d {
                for k in 0..d {
                    s[j * d + k] += e.weight * e.coeffs[j] * e.coeffs[k].conj();
                }
            }
        }
        s
    }
}

/// Deviations of a POVM from positivity, unit norms and completeness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub weight_positivity: bool,
    pub min_weight: f64,
    pub unit_norm_deviation: f64,
    pub completeness_deviation: f64,
    pub verdict: bool,
}

pub fn validate_povm(p: &Povm) -> ValidationReport {
    let min_weight = p
        .elements()
        .iter()
        .map(|e| e.weight)
        .fold(f64::INFINITY, f64::min);
    let weight_positivity = p
        .elements()
        .iter()
        .all(|e| e.weight > 0.0 && e.weight.is_finite());
    let unit_norm_deviation = p
        .elements()
        .iter()
        .map(|e| (e.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    let d = p.dim();
    let completeness_deviation = p
        .completeness_matrix()
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let delta = if idx / d == idx % d { 1.0 } else { 0.0 };
            (s - delta).norm()
        })
        .fold(0.0, f64::max);
    let verdict = weight_positivity
        && !p.is_empty()
        && unit_norm_deviation <= STRUCTURAL_TOL
        && completeness_deviation <= STRUCTURAL_TOL;
    ValidationReport {
        weight_positivity,
        min_weight,
        unit_norm_deviation,
        completeness_deviation,
        verdict,
    }
}

/// A POVM together with one estimated phase per outcome; outcome `r` is
/// read as the qubit `ψ(θ, φ_r)` on the circle of the scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Strategy {
    povm: Povm,
    estimated_phis: Vec<f64>,
}

impl Strategy {
    pub fn new(povm: Povm, estimated_phis: Vec<f64>) -> Result<Self> {
        if povm.len() != estimated_phis.len() {
            return Err(Error::LengthMismatch(format!(
                "{} POVM elements but {} estimated phases",
                povm.len(),
                estimated_phis.len()
            )));
        }
        let estimated_phis = estimated_phis.into_iter().map(normalize_phase).collect();
        Ok(Self {
            povm,
            estimated_phis,
        })
    }

    pub fn povm(&self) -> &Povm {
        &self.povm
    }

    pub fn estimated_phis(&self) -> &[f64] {
        &self.estimated_phis
    }

    pub fn with_phis(&self, phis: Vec<f64>) -> Result<Self> {
        Strategy::new(self.povm.clone(), phis)
    }
}

/// Column-orthonormalizes a row-major `rows × cols` matrix in place
/// (modified Gram–Schmidt, two passes).
fn orthonormalize_columns(a: &mut [C64], rows: usize, cols: usize) {
    for _ in 0..2 {
        for j in 0..cols {
            for k in 0..j {
                let ip: C64 = (0..rows)
                    .map(|i| a[i * cols + k].conj() * a[i * cols + j])
                    .sum();
                for i in 0..rows {
                    let sub = ip * a[i * cols + k];
                    a[i * cols + j] -= sub;
                }
            }
            let norm = (0..rows)
                .map(|i| a[i * cols + j].norm_sqr())
                .sum::<f64>()
                .sqrt();
            for i in 0..rows {
                a[i * cols + j] /= norm;
            }
        }
    }
}

/// A random POVM with `count` rank-one elements on a `dim`-dimensional span.
///
/// The rows of a `count × dim` isometry (orthonormalized complex Gaussian
/// matrix) give the unnormalized elements, so completeness holds by
/// construction.
pub fn random_povm(dim: usize, count: usize, seed: u64) -> Result<Povm> {
    if dim == 0 {
        return Err(Error::domain("dim", 0.0, "dim ≥ 1"));
    }
    if count < dim {
        return Err(Error::domain(
            "count",
            count as f64,
            format!("count ≥ dim = {dim}"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a: Vec<C64> = (0..count * dim)
        .map(|_| {
            C64::new(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            )
        })
        .collect();
    orthonormalize_columns(&mut a, count, dim);
    let elements = a
        .chunks(dim)
        .filter_map(|row| {
            let weight: f64 = row.iter().map(|c| c.norm_sqr()).sum();
            (weight > 0.0).then(|| {
                let norm = weight.sqrt();
                PovmElement::new(weight, row.iter().map(|c| c / norm).collect())
            })
        })
        .collect();
    Povm::new(dim, elements)
}

/// Uniform random phases in `[0, 2π)`.
pub(crate) fn random_phases<R: rand::Rng>(rng: &mut R, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random::<f64>() * TAU).collect()
}
