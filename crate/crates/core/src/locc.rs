//! A two-step local measurement protocol for two parallel qubits on a known
//! circle.
//!
//! The first qubit is measured in the basis `(|0⟩ ± |1⟩)/√2`, the second in
//! `(|0⟩ ± i|1⟩)/√2`. The two signs pick a quadrant of the circle and the
//! estimate is the quadrant's midpoint. Only θ is an input to the protocol;
//! φ enters through the measurement statistics alone.

use std::f64::consts::{FRAC_PI_4, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bloch::{checked_colatitude, overlap_score, PureQubit};
use crate::formulas::FidelityValue;
use crate::povm::McEstimate;
use crate::quadrature::{periodic_mean, periodic_node_count};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Branch order used by [`locc_branch_probabilities`].
pub const BRANCHES: [(Sign, Sign); 4] = [
    (Sign::Plus, Sign::Plus),
    (Sign::Plus, Sign::Minus),
    (Sign::Minus, Sign::Plus),
    (Sign::Minus, Sign::Minus),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoccOutcome {
    pub first_outcome: Sign,
    pub second_outcome: Sign,
    pub estimated_phi: f64,
}

/// The estimate assigned to an outcome pair.
pub fn estimated_phi(first: Sign, second: Sign) -> f64 {
    match (first, second) {
        (Sign::Plus, Sign::Plus) => FRAC_PI_4,
        (Sign::Plus, Sign::Minus) => 7.0 * FRAC_PI_4,
        (Sign::Minus, Sign::Plus) => 3.0 * FRAC_PI_4,
        (Sign::Minus, Sign::Minus) => 5.0 * FRAC_PI_4,
    }
}

fn projector_probability(state: [C64; 2], sign: Sign, phase: C64) -> f64 {
    let s = match sign {
        Sign::Plus => 1.0,
        Sign::Minus => -1.0,
    };
    // ⟨v|ψ⟩ for |v⟩ = (|0⟩ + s·phase|1⟩)/√2
    let amp = (state[0] + (phase * s).conj() * state[1]) / 2f64.sqrt();
    amp.norm_sqr()
}

/// Joint outcome probabilities in [`BRANCHES`] order.
pub fn locc_branch_probabilities(theta: f64, phi: f64) -> Result<[f64; 4]> {
    let q = PureQubit::new(theta, phi)?.amplitudes();
    let real = C64::new(1.0, 0.0);
    let imag = C64::new(0.0, 1.0);
    Ok(
        BRANCHES
            .map(|(a, b)| projector_probability(q, a, real) * projector_probability(q, b, imag)),
    )
}

fn sample_branch<R: Rng>(probs: &[f64; 4], rng: &mut R) -> (Sign, Sign) {
    let total: f64 = probs.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (b, &p) in BRANCHES.iter().zip(probs) {
        if u < p {
            return *b;
        }
        u -= p;
    }
    // rounding left u past the last positive branch
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(3);
    BRANCHES[last]
}

fn run_with<R: Rng>(theta: f64, phi: f64, rng: &mut R) -> Result<LoccOutcome> {
    let probs = locc_branch_probabilities(theta, phi)?;
    let (first_outcome, second_outcome) = sample_branch(&probs, rng);
    Ok(LoccOutcome {
        first_outcome,
        second_outcome,
        estimated_phi: estimated_phi(first_outcome, second_outcome),
    })
}

/// Simulates one run of the protocol on `|ψ(θ,φ)⟩ ⊗ |ψ(θ,φ)⟩`.
pub fn locc_run(theta: f64, phi: f64, seed: u64) -> Result<LoccOutcome> {
    run_with(theta, phi, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn expected_score(theta: f64, phi: f64) -> Result<f64> {
    let truth = PureQubit::new(theta, phi)?;
    let probs = locc_branch_probabilities(theta, phi)?;
    BRANCHES
        .iter()
        .zip(probs)
        .try_fold(0.0, |acc, (&(a, b), p)| {
            let est = PureQubit::new(theta, estimated_phi(a, b))?;
            Ok(acc + p * overlap_score(&truth, &est))
        })
}

/// Exact average fidelity of the protocol over a uniform φ.
pub fn locc_average_fidelity_exact(theta: f64) -> Result<FidelityValue> {
    let theta = checked_colatitude("theta", theta)?;
    let mut err = None;
    let mean = periodic_mean(periodic_node_count(3), |phi| {
        expected_score(theta, phi).unwrap_or_else(|e| {
            err = Some(e);
            f64::NAN
        })
    });
    match err {
        Some(e) => Err(e),
        None => FidelityValue::new(mean),
    }
}

/// Monte Carlo estimate of the protocol's average fidelity.
pub fn locc_average_fidelity_mc(theta: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    let theta = checked_colatitude("theta", theta)?;
    if samples == 0 {
        return Err(Error::domain("samples", 0.0, "samples ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut mean, mut m2) = (0.0, 0.0);
    for i in 0..samples {
        let phi = rng.random::<f64>() * TAU;
        let outcome = run_with(theta, phi, &mut rng)?;
        let x = overlap_score(
            &PureQubit::new(theta, phi)?,
            &PureQubit::new(theta, outcome.estimated_phi)?,
        );
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
