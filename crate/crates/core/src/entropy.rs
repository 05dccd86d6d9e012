//! Von Neumann entropies of ensemble-average states.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::bloch::{xlog2x, PureQubit};
use crate::encoding::{encoding_weights, kron};
use crate::povm::Alignment;
use crate::quadrature::{gauss_legendre, periodic_nodes};
use crate::{Error, Result, C64};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const NEGATIVE_TOL: f64 = 1e-10;

/// Gauss–Legendre order in cos θ and uniform node count in φ for sphere averages.
pub const SPHERE_ORDER: (usize, usize) = (64, 64);

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::InvalidDensityMatrix(format!(
                "shape {}×{} is not square and nonempty",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let asym = (&entries - entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if asym > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max |ρ − ρ†| = {asym:e})"
            )));
        }
        let trace = entries.trace();
        if (trace - 1.0).norm() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace} ≠ 1")));
        }
        let hermitian = (&entries + entries.adjoint()) * C64::new(0.5, 0.0);
        let mut eigenvalues: Vec<f64> = hermitian.symmetric_eigenvalues().iter().copied().collect();
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        if let Some(&low) = eigenvalues.last() {
            if low < -NEGATIVE_TOL {
                return Err(Error::InvalidDensityMatrix(format!(
                    "negative eigenvalue {low:e}"
                )));
            }
        }
        Ok(Self {
            entries,
            eigenvalues,
        })
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            diag.len(),
            diag.iter().map(|&x| C64::new(x, 0.0)),
        ));
        Self::new(d)
    }

    /// `Σ_i p_i |v_i⟩⟨v_i|`.
    pub fn from_ensemble(states: &[(f64, Vec<C64>)]) -> Result<Self> {
        let dim = states.first().map_or(0, |s| s.1.len());
        let mut rho = DMatrix::<C64>::zeros(dim, dim);
        for (p, v) in states {
            if v.len() != dim {
                return Err(Error::LengthMismatch(format!(
                    "ensemble state of length {} in dimension {dim}",
                    v.len()
                )));
            }
            let col = DMatrix::from_column_slice(dim, 1, v);
            rho += &col * col.adjoint() * C64::new(*p, 0.0);
        }
        Self::new(rho)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// `−Σ λ log₂ λ` in bits, with slightly negative eigenvalues clipped to zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    -rho.eigenvalues
        .iter()
        .map(|&l| xlog2x(l.max(0.0)))
        .sum::<f64>()
}

/// The φ-average of `|Ψ_{n,m}(θ,φ)⟩⟨Ψ_{n,m}(θ,φ)|` in the `ξ` basis, which is
/// `diag(N_0², …, N_{n+m}²)`.
pub fn circle_average_state(n: usize, m: usize, theta: f64) -> Result<DensityMatrix> {
    let w = encoding_weights(n, m, theta)?;
    let sq: Vec<f64> = w.iter().map(|x| x * x).collect();
    let total: f64 = sq.iter().sum();
    DensityMatrix::from_diagonal(&sq.iter().map(|x| x / total).collect::<Vec<_>>())
}

fn pair_state(kind: Alignment, theta: f64, phi: f64) -> Result<Vec<C64>> {
    let q = PureQubit::new(theta, phi)?;
    let second = match kind {
        Alignment::Parallel => q,
        Alignment::Antiparallel => q.orthogonal(),
    };
    Ok(kron(&q.amplitudes(), &second.amplitudes()))
}

/// The uniform average over the whole Bloch sphere of the two-qubit
/// encoding, in the computational basis.
pub fn sphere_average_state(kind: Alignment) -> Result<DensityMatrix> {
    sphere_average_state_with_order(kind, SPHERE_ORDER.0, SPHERE_ORDER.1)
}

/// [`sphere_average_state`] with explicit quadrature sizes.
pub fn sphere_average_state_with_order(
    kind: Alignment,
    legendre_order: usize,
    phi_nodes: usize,
) -> Result<DensityMatrix> {
    if legendre_order == 0 || phi_nodes == 0 {
        return Err(Error::domain(
            "quadrature order",
            legendre_order.min(phi_nodes) as f64,
            "≥ 1",
        ));
    }
    let phis: Vec<f64> = periodic_nodes(phi_nodes).collect();
    let mut states = Vec::with_capacity(legendre_order * phi_nodes);
    for (x, w) in gauss_legendre(legendre_order) {
        let theta = x.clamp(-1.0, 1.0).acos();
        for &phi in &phis {
            states.push((0.5 * w / phi_nodes as f64, pair_state(kind, theta, phi)?));
        }
    }
    DensityMatrix::from_ensemble(&states)
}

/// Entropies of the two single-qubit ensembles
/// `E1 = {|0⟩ : 1/2 + (√2+1/2)/4, |1⟩ : 1/2 − (√2+1/2)/4}` and
/// `E2 = {|0⟩ : 1/2, (|0⟩+|1⟩)/√2 : 1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CounterexampleEntropies {
    pub s_e1: f64,
    pub s_e2: f64,
}

pub fn counterexample_entropies() -> Result<CounterexampleEntropies> {
    let zero = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let one = vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    let h = 0.5f64.sqrt();
    let plus = vec![C64::new(h, 0.0), C64::new(h, 0.0)];
    let bias = (2f64.sqrt() + 0.5) / 4.0;
    let e1 = DensityMatrix::from_ensemble(&[(0.5 + bias, zero.clone()), (0.5 - bias, one)])?;
    let e2 = DensityMatrix::from_ensemble(&[(0.5, zero), (0.5, plus)])?;
    Ok(CounterexampleEntropies {
        s_e1: von_neumann_entropy(&e1),
        s_e2: von_neumann_entropy(&e2),
    })
}
