//! Closed-form optimal fidelities and related expressions.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use serde::Serialize;

use crate::bloch::checked_colatitude;
use crate::encoding::{binomial, encoding_weights, two_circle_basis};
use crate::{Error, Result};

/// An average fidelity, guaranteed to lie in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct FidelityValue(f64);

impl FidelityValue {
    /// Accepts values within rounding of `[0, 1]` and clamps them.
    pub fn new(value: f64) -> Result<Self> {
        const SLACK: f64 = 1e-12;
        if !(-SLACK..=1.0 + SLACK).contains(&value) {
            return Err(Error::domain("fidelity", value, "[0, 1]"));
        }
        Ok(Self(value.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<FidelityValue> for f64 {
    fn from(v: FidelityValue) -> f64 {
        v.0
    }
}

/// Optimal average fidelity for `n` copies of a circle qubit and `m` copies
/// of its orthogonal partner:
/// `(1+cos²θ)/2 + (sin²θ/2) Σ_{p=1}^{n+m} N_{p−1}(θ) N_p(θ)`.
pub fn fmax_nm(n: usize, m: usize, theta: f64) -> Result<FidelityValue> {
    let w = encoding_weights(n, m, theta)?;
    let (sin, cos) = theta.sin_cos();
    let overlap: f64 = w.windows(2).map(|p| p[0] * p[1]).sum();
    FidelityValue::new(0.5 * (1.0 + cos * cos) + 0.5 * sin * sin * overlap)
}

/// The equatorial value `1/2 + 2^{−(n+1)} Σ_{i=0}^{n−1} √(C(n,i) C(n,i+1))`.
pub fn equatorial_fidelity(n: usize) -> Result<FidelityValue> {
    if n == 0 || n > 64 {
        return Err(Error::domain("n", n as f64, "[1, 64]"));
    }
    let sum: f64 = (0..n)
        .map(|i| ((binomial(n, i) as f64) * (binomial(n, i + 1) as f64)).sqrt())
        .sum();
    FidelityValue::new(0.5 + sum / 2f64.powi(n as i32 + 1))
}

/// Optimal average fidelity for `|ψ(θ,φ)⟩ ⊗ |ψ(θ+θ0,φ)⟩`:
/// `1 − sin²θ/2 + (sin²θ cos(θ0/2)/2) N(θ,θ0)`.
pub fn fmax_two_circle(theta: f64, theta0: f64) -> Result<FidelityValue> {
    let basis = two_circle_basis(theta, theta0)?;
    let s2 = basis.theta().sin().powi(2);
    FidelityValue::new(1.0 - 0.5 * s2 + 0.5 * s2 * (0.5 * basis.theta0()).cos() * basis.n_factor())
}

/// `∂/∂θ0` of [`fmax_two_circle`] at `θ0 = 0`: `√2 sin²θ cos θ / 8`.
pub fn d_fmax_two_circle_at_zero(theta: f64) -> Result<f64> {
    let theta = checked_colatitude("theta", theta)?;
    let (sin, cos) = theta.sin_cos();
    Ok(SQRT_2 * sin * sin * cos / 8.0)
}

/// `∂/∂θ0` of [`fmax_two_circle`] at `θ0 = π − 2θ`:
/// `−sin²θ cos³θ / (4 √(1 − sin²θ/2))`.
pub fn d_fmax_two_circle_at_antiparallel(theta: f64) -> Result<f64> {
    let theta = checked_colatitude("theta", theta)?;
    let (sin, cos) = theta.sin_cos();
    Ok(-sin * sin * cos.powi(3) / (4.0 * (1.0 - 0.5 * sin * sin).sqrt()))
}

/// Optimal average fidelity for two qubits on the circle θ or π−θ, with the
/// second qubit parallel or anti-parallel: `(1/2)(1 + sin³θ/√2)`.
pub fn fmax_opposite(theta: f64) -> Result<FidelityValue> {
    let theta = checked_colatitude("theta", theta)?;
    FidelityValue::new(0.5 * (1.0 + theta.sin().powi(3) / SQRT_2))
}

/// Average fidelity of the DFT-4 measurement on anti-parallel opposite-circle
/// qubits, as a function of the estimated phases of outcomes 2, 3, 4:
/// `(1/2)[1 + (sin³θ/16)(2√2 sin(π/4−φ2) − 4cos φ3 + 2cos φ4 + 2sin φ4)]`.
/// The phase of outcome 1 does not enter.
pub fn fourier4_objective(theta: f64, phi2: f64, phi3: f64, phi4: f64) -> Result<FidelityValue> {
    let theta = checked_colatitude("theta", theta)?;
    let bracket = 2.0 * SQRT_2 * (FRAC_PI_4 - phi2).sin() - 4.0 * phi3.cos()
        + 2.0 * phi4.cos()
        + 2.0 * phi4.sin();
    FidelityValue::new(0.5 * (1.0 + theta.sin().powi(3) / 16.0 * bracket))
}

/// Average fidelity of the two-step local measurement on two parallel qubits:
/// `(1+cos²θ)/2 + sin³θ/(2√2)`.
pub fn locc_closed_form(theta: f64) -> Result<FidelityValue> {
    let theta = checked_colatitude("theta", theta)?;
    let (sin, cos) = theta.sin_cos();
    FidelityValue::new(0.5 * (1.0 + cos * cos) + sin.powi(3) / (2.0 * SQRT_2))
}
