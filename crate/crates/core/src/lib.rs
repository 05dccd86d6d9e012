//! Optimal estimation of pure qubits restricted to circles of the Bloch sphere.
//!
//! The crate builds the supplied-state encodings (`n` copies of a qubit and
//! `m` copies of its orthogonal partner, two-circle encodings, and
//! diametrically opposite circles), represents and validates rank-one POVMs
//! over the span of those encodings, and evaluates average estimation
//! fidelities both exactly (periodic quadrature) and by Monte Carlo. Closed
//! forms for the optimal fidelities live in [`formulas`] and are used as
//! bounds by [`povm::certify_bound`]. A two-step local measurement protocol is
//! simulated in [`locc`], and [`entropy`] computes von Neumann entropies of
//! ensemble-average states.

pub mod bloch;
pub mod encoding;
pub mod entropy;
mod error;
pub mod formulas;
pub mod locc;
pub mod povm;
pub mod quadrature;

pub use error::{Error, Result};

pub use num_complex::Complex64 as C64;

/// Tolerance used for structural checks (unit norms, completeness).
pub const STRUCTURAL_TOL: f64 = 1e-10;
/// Tolerance on equality between an evaluated strategy and its closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
/// Allowed excess of a numerically found fidelity over a closed-form bound.
pub const BOUND_MARGIN: f64 = 1e-9;
