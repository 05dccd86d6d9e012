use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result, C64};

use super::fidelity::{exact_nodes, Node};
use super::{average_fidelity, random_phases, random_povm, Povm, PovmElement, Scenario, Strategy};

const MAX_ITERATIONS: usize = 20_000;
const CONVERGED: f64 = 1e-15;
const MIN_WEIGHT: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub strategy: Strategy,
    pub fidelity: f64,
    pub bound: f64,
    /// `bound − fidelity`.
    pub gap: f64,
}

/// Score operators `(M_A, M_c, M_s)`: with unnormalized element vectors
/// `w_r`, the objective is `Σ_r w_r† (M_A + cos φ_r M_c + sin φ_r M_s) w_r`.
fn score_operators(nodes: &[Node], dim: usize) -> [DMatrix<C64>; 3] {
    let mut ops = [
        DMatrix::zeros(dim, dim),
        DMatrix::zeros(dim, dim),
        DMatrix::zeros(dim, dim),
    ];
    for node in nodes {
        let mu = DMatrix::from_column_slice(dim, 1, &node.state);
        let proj = &mu * mu.adjoint();
        let scales = [node.a, node.b * node.phi.cos(), node.b * node.phi.sin()];
        for (op, s) in ops.iter_mut().zip(scales) {
            *op += &proj * C64::new(node.weight * s, 0.0);
        }
    }
    ops
}

fn quadratic(op: &DMatrix<C64>, w: &DVector<C64>) -> f64 {
    w.dotc(&(op * w)).re
}

struct Climb {
    w: DMatrix<C64>,
    phis: Vec<f64>,
    value: f64,
}

/// Alternates the exact phase update with a polar-decomposition step on the
/// element vectors; both steps never decrease the objective.
fn climb(ops: &[DMatrix<C64>; 3], mut w: DMatrix<C64>, mut phis: Vec<f64>) -> Climb {
    let (dim, k) = w.shape();
    let mut value = f64::NEG_INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut next = 0.0;
        for (r, phi) in phis.iter_mut().enumerate() {
            let col = w.column(r).into_owned();
            let [a, b, c] = [0, 1, 2].map(|i| quadratic(&ops[i], &col));
            *phi = c.atan2(b);
            next += a + b.hypot(c);
        }
        if next - value < CONVERGED {
            value = value.max(next);
            break;
        }
        value = next;

        let mut g = DMatrix::<C64>::zeros(dim, k);
        for (r, &phi) in phis.iter().enumerate() {
            let m =
                &ops[0] + &ops[1] * C64::new(phi.cos(), 0.0) + &ops[2] * C64::new(phi.sin(), 0.0);
            g.set_column(r, &(m * w.column(r)));
        }
        let svd = g.svd(true, true);
        match (svd.u, svd.v_t) {
            (Some(u), Some(v_t)) => w = u * v_t,
            _ => break,
        }
    }
    Climb { w, phis, value }
}

fn to_strategy(c: &Climb) -> Result<Strategy> {
    let (dim, k) = c.w.shape();
    let mut elements = Vec::with_capacity(k);
    let mut phis = Vec::with_capacity(k);
    for r in 0..k {
        let col = c.w.column(r);
        let weight: f64 = col.iter().map(|z| z.norm_sqr()).sum();
        if weight > MIN_WEIGHT {
            let norm = weight.sqrt();
            elements.push(PovmElement::new(
                weight,
                col.iter().map(|z| z / norm).collect(),
            ));
            phis.push(c.phis[r]);
        }
    }
    Strategy::new(Povm::new(dim, elements)?, phis)
}

/// Numerically maximizes the average fidelity over POVMs with up to
/// `2·dim` rank-one elements and their estimated phases, from `restarts`
/// random starting points.
pub fn optimize_strategy(sc: &Scenario, restarts: usize, seed: u64) -> Result<OptimizationResult> {
    if restarts == 0 {
        return Err(Error::domain("restarts", 0.0, "restarts ≥ 1"));
    }
    let ens = sc.ensemble()?;
    let dim = sc.span_dim();
    let ops = score_operators(&exact_nodes(&ens), dim);
    let runs = (0..restarts)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let count = rng.random_range(dim..=2 * dim);
            let povm = random_povm(dim, count, rng.random())?;
            let mut w = DMatrix::<C64>::zeros(dim, count);
            for (r, e) in povm.elements().iter().enumerate() {
                let s = e.weight.sqrt();
                for (j, c) in e.coeffs.iter().enumerate() {
                    w[(j, r)] = c * s;
                }
            }
            Ok(climb(&ops, w, random_phases(&mut rng, count)))
        })
        .collect::<Result<Vec<Climb>>>()?;
    let best = runs
        .iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one restart");
    let strategy = to_strategy(best)?;
    let fidelity = average_fidelity(&strategy, sc)?;
    let bound = sc.closed_form_optimum()?.value();
    Ok(OptimizationResult {
        strategy,
        fidelity,
        bound,
        gap: bound - fidelity,
    })
}
