use std::f64::consts::PI;

use serde::Serialize;

use crate::bloch::{checked_colatitude, half_angle};
use crate::encoding::{checked_offset, encoding_weights, two_circle_basis, MAX_ENCODED_QUBITS};
use crate::formulas::{fmax_nm, fmax_opposite, fmax_two_circle, FidelityValue};
use crate::{Error, Result};

use super::{
    fourier_strategy_single_circle, opposite_antiparallel_strategy, opposite_parallel_strategy,
    two_circle_strategy, Strategy,
};

/// Relative orientation of the two qubits supplied on opposite circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Alignment {
    Parallel,
    Antiparallel,
}

/// Which ensemble of encoded states is supplied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Scenario {
    /// `|ψ(θ,φ)⟩^{⊗n} ⊗ |ψ^⊥(θ,φ)⟩^{⊗m}` with φ uniform.
    SingleCircle { n: usize, m: usize, theta: f64 },
    /// `|ψ(θ,φ)⟩ ⊗ |ψ(θ+θ0,φ)⟩` with φ uniform.
    TwoCircle { theta: f64, theta0: f64 },
    /// Two qubits on the circle θ or, with equal probability, on the circle π−θ.
    OppositeCircles { theta: f64, kind: Alignment },
}

/// One sub-ensemble: span coordinates `base_i e^{i k_i φ}` and the target
/// colatitude the estimate is scored against.
#[derive(Debug, Clone)]
pub(crate) struct Branch {
    pub weight: f64,
    pub target_theta: f64,
    pub coords: Vec<(f64, i32)>,
}

#[derive(Debug, Clone)]
pub(crate) struct Ensemble {
    pub estimate_theta: f64,
    pub branches: Vec<Branch>,
}

impl Ensemble {
    /// Highest harmonic of the score-weighted outcome probability.
    pub fn degree(&self) -> usize {
        self.branches
            .iter()
            .map(|b| {
                let hi = b.coords.iter().map(|c| c.1).max().unwrap_or(0);
                let lo = b.coords.iter().map(|c| c.1).min().unwrap_or(0);
                (hi - lo) as usize + 1
            })
            .max()
            .unwrap_or(1)
    }
}

/// Coordinates of `|ψ(t,φ)⟩ ⊗ |ψ(t,φ)⟩` over `{|00⟩, |11⟩, (|01⟩+|10⟩)/√2}`.
fn parallel_pair(t: f64) -> Vec<(f64, i32)> {
    let (c, s) = half_angle(t);
    vec![(c * c, 0), (s * s, 2), (2f64.sqrt() * c * s, 1)]
}

/// Coordinates of `|ψ(t,φ)⟩ ⊗ |ψ(π−t,π+φ)⟩` over `{|00⟩, |11⟩, |01⟩, |10⟩}`.
fn antiparallel_pair(t: f64) -> Vec<(f64, i32)> {
    let (c, s) = half_angle(t);
    vec![(c * s, 0), (-s * c, 2), (-c * c, 1), (s * s, 1)]
}

impl Scenario {
    pub fn single_circle(n: usize, m: usize, theta: f64) -> Result<Self> {
        let sc = Scenario::SingleCircle { n, m, theta };
        sc.validate()?;
        Ok(sc)
    }

    pub fn two_circle(theta: f64, theta0: f64) -> Result<Self> {
        let sc = Scenario::TwoCircle { theta, theta0 };
        sc.validate()?;
        Ok(sc)
    }

    pub fn opposite(theta: f64, kind: Alignment) -> Result<Self> {
        let sc = Scenario::OppositeCircles { theta, kind };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Scenario::SingleCircle { n, m, theta } => {
                if n + m == 0 || n + m > MAX_ENCODED_QUBITS {
                    return Err(Error::domain(
                        "n + m",
                        (n + m) as f64,
                        format!("[1, {MAX_ENCODED_QUBITS}]"),
                    ));
                }
                checked_colatitude("theta", theta)?;
            }
            Scenario::TwoCircle { theta, theta0 } => {
                let theta = checked_colatitude("theta", theta)?;
                checked_offset(theta, theta0)?;
            }
            Scenario::OppositeCircles { theta, .. } => {
                checked_colatitude("theta", theta)?;
            }
        }
        Ok(())
    }

    /// Colatitude of the circle on which estimates are made.
    pub fn theta(&self) -> f64 {
        match *self {
            Scenario::SingleCircle { theta, .. }
            | Scenario::TwoCircle { theta, .. }
            | Scenario::OppositeCircles { theta, .. } => theta,
        }
    }

    pub fn span_dim(&self) -> usize {
        match *self {
            Scenario::SingleCircle { n, m, .. } => n + m + 1,
            Scenario::TwoCircle { .. } => 3,
            Scenario::OppositeCircles {
                kind: Alignment::Parallel,
                ..
            } => 3,
            Scenario::OppositeCircles {
                kind: Alignment::Antiparallel,
                ..
            } => 4,
        }
    }

    /// The closed-form optimal average fidelity.
    pub fn closed_form_optimum(&self) -> Result<FidelityValue> {
        match *self {
            Scenario::SingleCircle { n, m, theta } => fmax_nm(n, m, theta),
            Scenario::TwoCircle { theta, theta0 } => fmax_two_circle(theta, theta0),
            Scenario::OppositeCircles { theta, .. } => fmax_opposite(theta),
        }
    }

    /// The strategy known to attain [`Scenario::closed_form_optimum`].
    pub fn named_optimal_strategy(&self) -> Result<Strategy> {
        match *self {
            Scenario::SingleCircle { n, m, theta } => fourier_strategy_single_circle(n, m, theta),
            Scenario::TwoCircle { theta, theta0 } => two_circle_strategy(theta, theta0),
            Scenario::OppositeCircles {
                theta,
                kind: Alignment::Parallel,
            } => opposite_parallel_strategy(theta),
            Scenario::OppositeCircles {
                theta,
                kind: Alignment::Antiparallel,
            } => opposite_antiparallel_strategy(theta),
        }
    }

    pub(crate) fn ensemble(&self) -> Result<Ensemble> {
        self.validate()?;
        Ok(match *self {
            Scenario::SingleCircle { n, m, theta } => {
                let weights = encoding_weights(n, m, theta)?;
                let top = (n + m) as i32;
                let coords = weights
                    .iter()
                    .enumerate()
                    .map(|(p, &w)| (w, top - p as i32))
                    .collect();
                Ensemble {
                    estimate_theta: theta,
                    branches: vec![Branch {
                        weight: 1.0,
                        target_theta: theta,
                        coords,
                    }],
                }
            }
            Scenario::TwoCircle { theta, theta0 } => {
                let basis = two_circle_basis(theta, theta0)?;
                let (a, b) = basis.pole_coefficients();
                Ensemble {
                    estimate_theta: basis.theta(),
                    branches: vec![Branch {
                        weight: 1.0,
                        target_theta: basis.theta(),
                        coords: vec![(a, 0), (b, 2), (basis.n_factor(), 1)],
                    }],
                }
            }
            Scenario::OppositeCircles { theta, kind } => {
                let theta = checked_colatitude("theta", theta)?;
                let pair = match kind {
                    Alignment::Parallel => parallel_pair,
                    Alignment::Antiparallel => antiparallel_pair,
                };
                let branches = [theta, PI - theta]
                    .into_iter()
                    .map(|t| Branch {
                        weight: 0.5,
                        target_theta: t,
                        coords: pair(t),
                    })
                    .collect();
                Ensemble {
                    estimate_theta: theta,
                    branches,
                }
            }
        })
    }
}
