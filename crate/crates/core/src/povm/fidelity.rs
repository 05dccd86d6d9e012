use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::quadrature::{periodic_node_count, periodic_nodes};
use crate::{Error, Result, C64};

use super::scenario::{Branch, Ensemble};
use super::{Scenario, Strategy};

/// A quadrature node of the ensemble average: the supplied state's span
/// coordinates and the score `A + B cos(φ − φ_r)` of estimate `φ_r`.
#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub weight: f64,
    pub state: Vec<C64>,
    pub a: f64,
    pub b: f64,
    pub phi: f64,
}

pub(crate) fn branch_state(branch: &Branch, phi: f64) -> Vec<C64> {
    branch
        .coords
        .iter()
        .map(|&(amp, k)| C64::from_polar(amp, k as f64 * phi))
        .collect()
}

/// Score coefficients `(A, B)` with `score = A + B cos(φ − φ_r)`.
fn score_coefficients(target_theta: f64, estimate_theta: f64) -> (f64, f64) {
    (
        0.5 * (1.0 + target_theta.cos() * estimate_theta.cos()),
        0.5 * target_theta.sin() * estimate_theta.sin(),
    )
}

pub(crate) fn quadrature_nodes(ens: &Ensemble, count: usize) -> Vec<Node> {
    let phis: Vec<f64> = periodic_nodes(count).collect();
    ens.branches
        .iter()
        .flat_map(|branch| {
            let (a, b) = score_coefficients(branch.target_theta, ens.estimate_theta);
            let w = branch.weight / count as f64;
            phis.iter().map(move |&phi| Node {
                weight: w,
                state: branch_state(branch, phi),
                a,
                b,
                phi,
            })
        })
        .collect()
}

pub(crate) fn exact_nodes(ens: &Ensemble) -> Vec<Node> {
    quadrature_nodes(ens, periodic_node_count(ens.degree()))
}

pub(crate) fn check_dim(s: &Strategy, sc: &Scenario) -> Result<()> {
    let expected = sc.span_dim();
    if s.povm().dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: s.povm().dim(),
        });
    }
    Ok(())
}

/// For each element, `(a_r, z_r)` such that the element's contribution with
/// estimate `φ` is `a_r + Re(z_r e^{−iφ})`.
pub(crate) fn element_profiles(s: &Strategy, nodes: &[Node]) -> Vec<(f64, C64)> {
    s.povm()
        .elements()
        .iter()
        .map(|e| {
            nodes
                .iter()
                .fold((0.0, C64::new(0.0, 0.0)), |(a, z), node| {
                    let p = node.weight * e.probability(&node.state);
                    (a + p * node.a, z + C64::from_polar(p * node.b, node.phi))
                })
        })
        .collect()
}

pub(crate) fn profile_value(profile: (f64, C64), phi: f64) -> f64 {
    profile.0 + (profile.1 * C64::from_polar(1.0, -phi)).re
}

fn evaluate(s: &Strategy, nodes: &[Node]) -> f64 {
    element_profiles(s, nodes)
        .into_iter()
        .zip(s.estimated_phis())
        .map(|(profile, &phi)| profile_value(profile, phi))
        .sum()
}

/// Average fidelity of a strategy over the scenario's ensemble, integrated
/// exactly in φ.
pub fn average_fidelity(s: &Strategy, sc: &Scenario) -> Result<f64> {
    check_dim(s, sc)?;
    let ens = sc.ensemble()?;
    Ok(evaluate(s, &exact_nodes(&ens)))
}

/// [`average_fidelity`] with an explicit number of uniform φ nodes per branch.
pub fn average_fidelity_with_nodes(s: &Strategy, sc: &Scenario, count: usize) -> Result<f64> {
    check_dim(s, sc)?;
    if count == 0 {
        return Err(Error::domain("count", 0.0, "count ≥ 1"));
    }
    let ens = sc.ensemble()?;
    Ok(evaluate(s, &quadrature_nodes(&ens, count)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Sample mean and standard error of the score over `samples` simulated
/// preparations and measurements.
pub fn monte_carlo_fidelity(
    s: &Strategy,
    sc: &Scenario,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    check_dim(s, sc)?;
    if samples == 0 {
        return Err(Error::domain("samples", 0.0, "samples ≥ 1"));
    }
    let ens = sc.ensemble()?;
    let scores: Vec<(f64, f64)> = ens
        .branches
        .iter()
        .map(|b| score_coefficients(b.target_theta, ens.estimate_theta))
        .collect();
    let total_weight: f64 = ens.branches.iter().map(|b| b.weight).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probs = vec![0.0; s.povm().len()];

    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 0..samples {
        let mut u = rng.random::<f64>() * total_weight;
        let mut bi = ens.branches.len() - 1;
        for (j, b) in ens.branches.iter().enumerate() {
            if u < b.weight {
                bi = j;
                break;
            }
            u -= b.weight;
        }
        let phi = rng.random::<f64>() * TAU;
        let state = branch_state(&ens.branches[bi], phi);
        for (p, e) in probs.iter_mut().zip(s.povm().elements()) {
            *p = e.probability(&state);
        }
        let norm: f64 = probs.iter().sum();
        let mut u = rng.random::<f64>() * norm;
        let mut r = probs.len() - 1;
        for (j, &p) in probs.iter().enumerate() {
            if u < p {
                r = j;
                break;
            }
            u -= p;
        }
        let (a, b) = scores[bi];
        let x = a + b * (phi - s.estimated_phis()[r]).cos();
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let std_error = if samples > 1 {
        (m2.max(0.0) / (samples - 1) as f64 / samples as f64).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        samples,
    })
}
