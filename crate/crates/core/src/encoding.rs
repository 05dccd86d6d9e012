//! Supplied-state encodings and their orthonormal span bases.
//!
//! Computational basis strings are ordered as big-endian integers: the first
//! qubit is the most significant bit. The encoding basis vectors `ξ_p` are
//! indexed by `p`, the total number of zeros, in ascending order.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::bloch::{checked_colatitude, half_angle, PureQubit};
use crate::{Error, Result, C64};

/// Largest `n + m` for which dense `2^{n+m}` vectors are built.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest `n + m` accepted by the weight computation.
pub const MAX_ENCODED_QUBITS: usize = 64;

/// Binomial coefficient with exact integer arithmetic.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The normalized symmetric superposition of `n`-bit strings with `j` zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    n: usize,
    j: usize,
    amplitudes: BTreeMap<usize, f64>,
}

impl DickeState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zeros(&self) -> usize {
        self.j
    }

    /// Nonzero amplitudes keyed by computational basis index.
    pub fn amplitudes(&self) -> &BTreeMap<usize, f64> {
        &self.amplitudes
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut v = vec![0.0; 1 << self.n];
        for (&idx, &a) in &self.amplitudes {
            v[idx] = a;
        }
        v
    }
}

pub fn dicke(n: usize, j: usize) -> Result<DickeState> {
    if j > n {
        return Err(Error::domain("j", j as f64, format!("[0, {n}]")));
    }
    if n > MAX_DENSE_QUBITS {
        return Err(Error::domain(
            "n",
            n as f64,
            format!("[0, {MAX_DENSE_QUBITS}] for explicit Dicke states"),
        ));
    }
    let amp = 1.0 / (binomial(n, j) as f64).sqrt();
    let amplitudes = (0usize..1 << n)
        .filter(|idx| n - idx.count_ones() as usize == j)
        .map(|idx| (idx, amp))
        .collect();
    Ok(DickeState { n, j, amplitudes })
}

fn check_counts(n: usize, m: usize, cap: usize) -> Result<()> {
    if n + m == 0 {
        return Err(Error::domain("n + m", 0.0, "n + m ≥ 1"));
    }
    if n + m > cap {
        return Err(Error::domain(
            "n + m",
            (n + m) as f64,
            format!("n + m ≤ {cap}"),
        ));
    }
    Ok(())
}

/// Amplitude of `|S_k^{(n)}⟩ ⊗ |S_l^{(m)}⟩` in `|Ψ_{n,m}(θ, 0)⟩`:
/// `√(C(n,k)C(m,l)) cos^{m−l+k}(θ/2) sin^{n+l−k}(θ/2) (−1)^{m−l}`.
fn block_amplitude(n: usize, m: usize, k: usize, l: usize, c: f64, s: f64) -> f64 {
    let mult = ((binomial(n, k) as f64) * (binomial(m, l) as f64)).sqrt();
    let sign = if (m - l).is_multiple_of(2) { 1.0 } else { -1.0 };
    mult * c.powi((m - l + k) as i32) * s.powi((n + l - k) as i32) * sign
}

/// Index pairs `(k, l)` with `k + l = p`, `k ≤ n`, `l ≤ m`.
fn block_pairs(n: usize, m: usize, p: usize) -> impl Iterator<Item = (usize, usize)> {
    (p.saturating_sub(m)..=p.min(n)).map(move |k| (k, p - k))
}

/// The weights `N_p(θ)`, `p = 0..=n+m`. Zero entries mark empty subspaces.
pub fn encoding_weights(n: usize, m: usize, theta: f64) -> Result<Vec<f64>> {
    check_counts(n, m, MAX_ENCODED_QUBITS)?;
    let theta = checked_colatitude("theta", theta)?;
    let (c, s) = half_angle(theta);
    Ok((0..=n + m)
        .map(|p| {
            block_pairs(n, m, p)
                .map(|(k, l)| block_amplitude(n, m, k, l, c, s).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect())
}

/// Orthonormal basis `{ξ_p(θ)}` of the span of `|Ψ_{n,m}(θ, φ)⟩`, together with
/// the weights `N_p(θ)`.
#[derive(Debug, Clone)]
pub struct EncodingBasis {
    n: usize,
    m: usize,
    theta: f64,
    weights: Vec<f64>,
    xi: Vec<Option<Vec<f64>>>,
}

impl EncodingBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `N_p(θ)` for `p = 0..=n+m`, including zeros.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The dense vector `ξ_p`, or `None` when `N_p(θ) = 0`.
    pub fn xi(&self, p: usize) -> Option<&[f64]> {
        self.xi.get(p).and_then(|v| v.as_deref())
    }

    /// Number of nonzero weights.
    pub fn span_dim(&self) -> usize {
        self.xi.iter().filter(|v| v.is_some()).count()
    }

    /// `Σ_p e^{i(n+m−p)φ} N_p(θ) ξ_p` as a dense vector.
    pub fn reconstruct(&self, phi: f64) -> Vec<C64> {
        let total = self.n + self.m;
        let mut out = vec![C64::new(0.0, 0.0); 1 << total];
        for (p, xi) in self.xi.iter().enumerate() {
            if let Some(xi) = xi {
                let coeff = C64::from_polar(self.weights[p], (total - p) as f64 * phi);
                for (o, x) in out.iter_mut().zip(xi) {
                    *o += coeff * x;
                }
            }
        }
        out
    }
}

pub fn encoding_basis(n: usize, m: usize, theta: f64) -> Result<EncodingBasis> {
    check_counts(n, m, MAX_DENSE_QUBITS)?;
    let theta = checked_colatitude("theta", theta)?;
    let weights = encoding_weights(n, m, theta)?;
    let (c, s) = half_angle(theta);
    let first: Vec<DickeState> = (0..=n).map(|k| dicke(n, k)).collect::<Result<_>>()?;
    let second: Vec<DickeState> = (0..=m).map(|l| dicke(m, l)).collect::<Result<_>>()?;

    let xi = weights
        .iter()
        .enumerate()
        .map(|(p, &w)| {
            if w == 0.0 {
                return None;
            }
            let mut v = vec![0.0; 1 << (n + m)];
            for (k, l) in block_pairs(n, m, p) {
                let a = block_amplitude(n, m, k, l, c, s) / w;
                for (&i, &x) in first[k].amplitudes() {
                    for (&j, &y) in second[l].amplitudes() {
                        v[(i << m) | j] += a * x * y;
                    }
                }
            }
            Some(v)
        })
        .collect();

    Ok(EncodingBasis {
        n,
        m,
        theta,
        weights,
        xi,
    })
}

/// Kronecker product of state vectors, first factor most significant.
pub fn kron(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// `|ψ(θ,φ)⟩^{⊗n} ⊗ |ψ(π−θ,π+φ)⟩^{⊗m}` computed as an explicit tensor product.
pub fn encode_supplied_state(n: usize, m: usize, theta: f64, phi: f64) -> Result<Vec<C64>> {
    check_counts(n, m, MAX_DENSE_QUBITS)?;
    let q = PureQubit::new(theta, phi)?;
    let a = q.amplitudes();
    let b = q.orthogonal().amplitudes();
    let mut out = vec![C64::new(1.0, 0.0)];
    for _ in 0..n {
        out = kron(&out, &a);
    }
    for _ in 0..m {
        out = kron(&out, &b);
    }
    Ok(out)
}

/// Coordinates of `|Ψ_{n,m}(θ,φ)⟩` in the `ξ` basis: `e^{i(n+m−p)φ} N_p(θ)`.
///
/// Zero-weight directions are kept as zero coordinates so the vector always
/// has length `n + m + 1`.
pub fn supplied_state_xi(n: usize, m: usize, theta: f64, phi: f64) -> Result<Vec<C64>> {
    let weights = encoding_weights(n, m, theta)?;
    Ok(xi_coordinates(&weights, phi))
}

pub(crate) fn xi_coordinates(weights: &[f64], phi: f64) -> Vec<C64> {
    let top = weights.len() - 1;
    weights
        .iter()
        .enumerate()
        .map(|(p, &w)| C64::from_polar(w, (top - p) as f64 * phi))
        .collect()
}

/// Span data for the two-circle encoding `|ψ(θ,φ)⟩ ⊗ |ψ(θ+θ0,φ)⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCircleBasis {
    theta: f64,
    theta0: f64,
    chi: Option<[f64; 4]>,
    n_factor: f64,
}

impl TwoCircleBasis {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// `|χ(θ,θ0)⟩` over `{|00⟩,|01⟩,|10⟩,|11⟩}`; `None` when `N(θ,θ0) = 0`.
    pub fn chi(&self) -> Option<&[f64; 4]> {
        self.chi.as_ref()
    }

    /// `N(θ,θ0)`.
    pub fn n_factor(&self) -> f64 {
        self.n_factor
    }

    /// Coefficients on `|00⟩` and `|11⟩` at `φ = 0`.
    pub fn pole_coefficients(&self) -> (f64, f64) {
        let (c, s) = half_angle(self.theta);
        let (c2, s2) = half_angle(self.theta + self.theta0);
        (c * c2, s * s2)
    }

    /// Coordinates in the span basis `{|00⟩, |11⟩, χ}`.
    pub fn span_coordinates(&self, phi: f64) -> [C64; 3] {
        let (a, b) = self.pole_coefficients();
        [
            C64::new(a, 0.0),
            C64::from_polar(b, 2.0 * phi),
            C64::from_polar(self.n_factor, phi),
        ]
    }
}

/// Checks `θ0 ∈ [−θ, π−θ]` and returns the clamped value.
pub(crate) fn checked_offset(theta: f64, theta0: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !theta0.is_finite() || theta0 < -theta - SLACK || theta0 > PI - theta + SLACK {
        return Err(Error::domain(
            "theta0",
            theta0,
            format!("[{}, {}]", -theta, PI - theta),
        ));
    }
    Ok(theta0.clamp(-theta, PI - theta))
}

pub fn two_circle_basis(theta: f64, theta0: f64) -> Result<TwoCircleBasis> {
    let theta = checked_colatitude("theta", theta)?;
    let theta0 = checked_offset(theta, theta0)?;
    let (c, s) = half_angle(theta);
    let (c2, s2) = half_angle(theta + theta0);
    let (u, v) = (c * s2, s * c2);
    let n_factor = u.hypot(v);
    let chi = (n_factor > 0.0).then(|| [0.0, u / n_factor, v / n_factor, 0.0]);
    Ok(TwoCircleBasis {
        theta,
        theta0,
        chi,
        n_factor,
    })
}

/// `|ψ(θ,φ)⟩ ⊗ |ψ(θ+θ0,φ)⟩` over `{|00⟩,|01⟩,|10⟩,|11⟩}`.
pub fn two_circle_supplied_state(theta: f64, theta0: f64, phi: f64) -> Result<[C64; 4]> {
    let theta = checked_colatitude("theta", theta)?;
    let theta0 = checked_offset(theta, theta0)?;
    let a = PureQubit::new(theta, phi)?.amplitudes();
    let b = PureQubit::new(theta + theta0, phi)?.amplitudes();
    Ok([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
}
