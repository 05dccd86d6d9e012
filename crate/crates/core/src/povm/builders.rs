use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::bloch::checked_colatitude;
use crate::encoding::{checked_offset, MAX_ENCODED_QUBITS};
use crate::{Error, Result, C64};

use super::{Povm, PovmElement, Strategy};

fn unit_phase(turns: f64) -> C64 {
    C64::from_polar(1.0, TAU * turns)
}

/// The `d`-dimensional Fourier basis as a projective POVM:
/// `λ_{pr} = e^{2πi·p·r/d} / √d`.
pub fn fourier_povm(d: usize) -> Result<Povm> {
    if d == 0 {
        return Err(Error::domain("d", 0.0, "d ≥ 1"));
    }
    let norm = 1.0 / (d as f64).sqrt();
    let elements = (0..d)
        .map(|r| {
            let coeffs = (0..d)
                .map(|p| unit_phase(((p * r) % d) as f64 / d as f64) * norm)
                .collect();
            PovmElement::new(1.0, coeffs)
        })
        .collect();
    Povm::new(d, elements)
}

/// The optimal single-circle strategy: a Fourier POVM over the `ξ` basis with
/// elements `e^{2πi(n−m−p)r/d} / √d`, `d = n+m+1`, and estimates `φ_r = 2πr/d`.
pub fn fourier_strategy_single_circle(n: usize, m: usize, theta: f64) -> Result<Strategy> {
    if n + m == 0 || n + m > MAX_ENCODED_QUBITS {
        return Err(Error::domain(
            "n + m",
            (n + m) as f64,
            format!("[1, {MAX_ENCODED_QUBITS}]"),
        ));
    }
    checked_colatitude("theta", theta)?;
    let d = n + m + 1;
    let norm = 1.0 / (d as f64).sqrt();
    let shift = n as i64 - m as i64;
    let elements = (0..d)
        .map(|r| {
            let coeffs = (0..d)
                .map(|p| {
                    let k = (shift - p as i64) * r as i64;
                    unit_phase(k.rem_euclid(d as i64) as f64 / d as f64) * norm
                })
                .collect();
            PovmElement::new(1.0, coeffs)
        })
        .collect();
    let phis = (0..d).map(|r| TAU * r as f64 / d as f64).collect();
    Strategy::new(Povm::new(d, elements)?, phis)
}

/// Fourier-3 measurement over `{|00⟩, |11⟩, χ}` with estimates
/// `(0, 4π/3, 2π/3)`.
pub fn two_circle_strategy(theta: f64, theta0: f64) -> Result<Strategy> {
    let theta = checked_colatitude("theta", theta)?;
    checked_offset(theta, theta0)?;
    Strategy::new(fourier_povm(3)?, vec![0.0, 4.0 * PI / 3.0, 2.0 * PI / 3.0])
}

/// DFT-3 measurement over `{|00⟩, |11⟩, (|01⟩+|10⟩)/√2}` for two parallel
/// qubits on opposite circles.
pub fn opposite_parallel_strategy(theta: f64) -> Result<Strategy> {
    checked_colatitude("theta", theta)?;
    let norm = 1.0 / 3f64.sqrt();
    let rows: [[usize; 3]; 3] = [[0, 0, 0], [0, 2, 1], [0, 1, 2]];
    let elements = rows
        .iter()
        .map(|row| {
            let coeffs = row
                .iter()
                .map(|&k| unit_phase(k as f64 / 3.0) * norm)
                .collect();
            PovmElement::new(1.0, coeffs)
        })
        .collect();
    Strategy::new(
        Povm::new(3, elements)?,
        vec![0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0],
    )
}

/// Haar-like measurement over `{|00⟩, |11⟩, |01⟩, |10⟩}` for anti-parallel
/// qubits on opposite circles, with estimates `(π/2, 3π/2, 0, π)`.
pub fn opposite_antiparallel_strategy(theta: f64) -> Result<Strategy> {
    checked_colatitude("theta", theta)?;
    let phis = [FRAC_PI_2, 3.0 * FRAC_PI_2, 0.0, PI];
    let h = 0.5f64.sqrt();
    let zero = C64::new(0.0, 0.0);
    let elements = phis
        .iter()
        .enumerate()
        .map(|(r, &phi)| {
            let e1 = C64::from_polar(1.0, -phi);
            let (c3, c4) = if r < 2 {
                (-e1 * h, zero)
            } else {
                (zero, e1 * h)
            };
            let coeffs = vec![
                C64::from_polar(0.5, -2.0 * phi),
                C64::new(-0.5, 0.0),
                c3,
                c4,
            ];
            PovmElement::new(1.0, coeffs)
        })
        .collect();
    Strategy::new(Povm::new(4, elements)?, phis.to_vec())
}

/// DFT-4 measurement over `{|00⟩, |11⟩, |01⟩, |10⟩}` with arbitrary
/// estimated phases.
pub fn fourier4_antiparallel_strategy(phases: [f64; 4]) -> Result<Strategy> {
    if let Some(&bad) = phases.iter().find(|p| !p.is_finite()) {
        return Err(Error::domain("phase", bad, "finite reals"));
    }
    Strategy::new(fourier_povm(4)?, phases.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::povm::validate_povm;

    fn assert_valid(s: &Strategy) {
        let r = validate_povm(s.povm());
        assert!(r.verdict, "{r:?}");
        assert!(r.completeness_deviation < 1e-12 && r.unit_norm_deviation < 1e-12);
    }

    #[test]
    fn fourier_examples() {
        let p = fourier_povm(1).unwrap();
        assert_eq!(p.elements()[0].coeffs, vec![C64::new(1.0, 0.0)]);
        assert!(fourier_povm(0).is_err());
        for d in 1..=9 {
            let r = validate_povm(&fourier_povm(d).unwrap());
            assert!(r.verdict && r.completeness_deviation < 1e-14, "d={d}");
        }
    }

    #[test]
    fn fourier3_matches_two_circle_table() {
        let p = fourier_povm(3).unwrap();
        let w = C64::from_polar(1.0, TAU / 3.0);
        for (r, e) in p.elements().iter().enumerate() {
            for (j, c) in e.coeffs.iter().enumerate() {
                let expect = w.powu((j * r) as u32) / 3f64.sqrt();
                assert!((c - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn single_circle_builder_shapes() {
        let s = fourier_strategy_single_circle(1, 0, 0.4).unwrap();
        assert_eq!(s.povm().len(), 2);
        assert!((s.estimated_phis()[0]).abs() < 1e-15);
        assert!((s.estimated_phis()[1] - PI).abs() < 1e-15);
        assert!(fourier_strategy_single_circle(0, 0, 0.4).is_err());
        for (n, m) in [(1, 0), (2, 0), (1, 1), (3, 2), (0, 4)] {
            assert_valid(&fourier_strategy_single_circle(n, m, 1.0).unwrap());
        }
    }

    #[test]
    fn named_builders_are_valid_povms() {
        for theta in [0.0, 0.5, 1.3, PI] {
            assert_valid(&two_circle_strategy(theta, 0.0).unwrap());
            assert_valid(&opposite_parallel_strategy(theta).unwrap());
            assert_valid(&opposite_antiparallel_strategy(theta).unwrap());
        }
        assert_valid(&two_circle_strategy(1.0, -1.0).unwrap());
        assert_valid(&fourier4_antiparallel_strategy([0.1, 2.0, 5.0, 3.0]).unwrap());
        assert!(two_circle_strategy(1.0, 3.0).is_err());
        assert!(opposite_parallel_strategy(-1.0).is_err());
    }

    #[test]
    fn antiparallel_table_has_haar_pattern() {
        let s = opposite_antiparallel_strategy(1.0).unwrap();
        let mags: Vec<Vec<f64>> = s
            .povm()
            .elements()
            .iter()
            .map(|e| e.coeffs.iter().map(|c| c.norm()).collect())
            .collect();
        let h = 0.5f64.sqrt();
        let expect = [
            [0.5, 0.5, h, 0.0],
            [0.5, 0.5, h, 0.0],
            [0.5, 0.5, 0.0, h],
            [0.5, 0.5, 0.0, h],
        ];
        for (row, e) in mags.iter().zip(expect) {
            for (a, b) in row.iter().zip(e) {
                assert!((a - b).abs() < 1e-15);
            }
        }
        let e = s.povm().elements();
        assert!((e[0].coeffs[2] + e[1].coeffs[2]).norm() < 1e-15);
        assert!((e[2].coeffs[3] + e[3].coeffs[3]).norm() < 1e-15);
    }
}
