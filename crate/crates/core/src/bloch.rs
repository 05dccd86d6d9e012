//! Pure qubits on the Bloch sphere.

use std::f64::consts::{PI, TAU};

use crate::{Error, Result, C64};

/// Slack allowed on `θ ∈ [0, π]` to absorb rounding in derived angles.
const ANGLE_SLACK: f64 = 1e-12;

/// The pure qubit `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
///
/// Global phase is not represented: the coefficient on `|0⟩` is always real
/// and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    theta: f64,
    phi: f64,
}

/// A real unit vector in three dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_phase(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Checks `θ ∈ [0, π]` (with rounding slack) and clamps into the interval.
pub(crate) fn checked_colatitude(name: &'static str, theta: f64) -> Result<f64> {
    if !theta.is_finite() || !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&theta) {
        return Err(Error::domain(name, theta, "[0, π]"));
    }
    Ok(theta.clamp(0.0, PI))
}

/// `(cos(θ/2), sin(θ/2))` with exact zeros at the poles.
pub(crate) fn half_angle(theta: f64) -> (f64, f64) {
    if theta == 0.0 {
        (1.0, 0.0)
    } else if theta == PI {
        (0.0, 1.0)
    } else {
        let h = 0.5 * theta;
        (h.cos(), h.sin())
    }
}

impl PureQubit {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        let theta = checked_colatitude("theta", theta)?;
        if !phi.is_finite() {
            return Err(Error::domain("phi", phi, "finite reals"));
        }
        Ok(Self {
            theta,
            phi: normalize_phase(phi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Coefficients on `|0⟩` and `|1⟩`.
    pub fn amplitudes(&self) -> [C64; 2] {
        let (c, s) = half_angle(self.theta);
        [C64::new(c, 0.0), C64::from_polar(s, self.phi)]
    }

    pub fn bloch_vector(&self) -> BlochVector {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        BlochVector {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    /// The qubit with antipodal Bloch vector, `(π − θ, π + φ)`.
    pub fn orthogonal(&self) -> Self {
        Self {
            theta: PI - self.theta,
            phi: normalize_phase(PI + self.phi),
        }
    }
}

/// Free-function form of [`PureQubit::bloch_vector`].
pub fn bloch_vector(q: &PureQubit) -> BlochVector {
    q.bloch_vector()
}

/// Free-function form of [`PureQubit::orthogonal`].
pub fn orthogonal(q: &PureQubit) -> PureQubit {
    q.orthogonal()
}

impl BlochVector {
    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Reflection through the equatorial plane.
    pub fn mirror(&self) -> Self {
        Self {
            x: self.x,
            y: self.y,
            z: -self.z,
        }
    }
}

impl std::ops::Neg for BlochVector {
    type Output = BlochVector;

    fn neg(self) -> BlochVector {
        BlochVector {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

pub fn mirror(v: &BlochVector) -> BlochVector {
    v.mirror()
}

/// `|⟨a|b⟩|² = (1 + n̂_a·n̂_b)/2`.
pub fn overlap_score(a: &PureQubit, b: &PureQubit) -> f64 {
    (0.5 * (1.0 + a.bloch_vector().dot(&b.bloch_vector()))).clamp(0.0, 1.0)
}

/// `x log₂ x` with the convention `0 log 0 = 0`.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy (bits) of the distribution `(x, 1 − x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("x", x, "[0, 1]"));
    }
    Ok(-xlog2x(x) - xlog2x(1.0 - x))
}
