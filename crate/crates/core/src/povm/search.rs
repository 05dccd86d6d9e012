use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result, BOUND_MARGIN, C64};

use super::fidelity::{check_dim, element_profiles, exact_nodes, profile_value};
use super::{random_phases, random_povm, Scenario, Strategy};

const SCAN_POINTS: usize = 32;
const GOLDEN_STEPS: usize = 80;
const MIN_IMPROVEMENT: f64 = 1e-12;

/// Maximizes a 2π-periodic function near its best point on a uniform scan,
/// refining by golden-section search. Returns `(argmax, max)`.
fn golden_maximize(f: impl Fn(f64) -> f64, start: f64) -> (f64, f64) {
    let h = TAU / SCAN_POINTS as f64;
    let (mut best_x, mut best_y) = (start, f(start));
    for k in 1..SCAN_POINTS {
        let x = start + h * k as f64;
        let y = f(x);
        if y > best_y {
            (best_x, best_y) = (x, y);
        }
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best_x - h, best_x + h);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut y1, mut y2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_STEPS {
        if y1 < y2 {
            lo = x1;
            (x1, y1) = (x2, y2);
            x2 = lo + inv_phi * (hi - lo);
            y2 = f(x2);
        } else {
            hi = x2;
            (x2, y2) = (x1, y1);
            x1 = hi - inv_phi * (hi - lo);
            y1 = f(x1);
        }
    }
    for (x, y) in [(x1, y1), (x2, y2)] {
        if y > best_y {
            (best_x, best_y) = (x, y);
        }
    }
    (best_x, best_y)
}

/// Refines the estimated phases of `s` one coordinate at a time with the
/// POVM held fixed. A move is accepted only if it strictly improves the
/// objective, so the result is never worse than the input.
pub fn hill_climb_phases(
    s: &Strategy,
    sc: &Scenario,
    iterations: usize,
    seed: u64,
) -> Result<Strategy> {
    check_dim(s, sc)?;
    let ens = sc.ensemble()?;
    let profiles: Vec<(f64, C64)> = element_profiles(s, &exact_nodes(&ens));
    let mut phis = s.estimated_phis().to_vec();
    let mut order: Vec<usize> = (0..phis.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..iterations {
        order.shuffle(&mut rng);
        let mut gained = 0.0;
        for &r in &order {
            let f = |x: f64| profile_value(profiles[r], x);
            let current = f(phis[r]);
            let (x, y) = golden_maximize(f, phis[r]);
            if y > current {
                gained += y - current;
                phis[r] = x;
            }
        }
        if gained < MIN_IMPROVEMENT {
            break;
        }
    }
    s.with_phis(phis)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificationReport {
    pub trials: usize,
    pub max_found: f64,
    pub bound: f64,
    /// `bound − max_found`.
    pub margin: f64,
    /// Whether `max_found ≤ bound + BOUND_MARGIN`.
    pub holds: bool,
}

/// Searches for strategies beating the closed-form optimum: each trial draws
/// a random POVM with between `dim` and `2·dim` elements and random phases,
/// then hill-climbs the phases. Trial `t` uses its own ChaCha stream, so the
/// result does not depend on scheduling.
pub fn certify_bound(sc: &Scenario, trials: usize, seed: u64) -> Result<CertificationReport> {
    if trials == 0 {
        return Err(Error::domain("trials", 0.0, "trials ≥ 1"));
    }
    let bound = sc.closed_form_optimum()?.value();
    let dim = sc.span_dim();
    let found = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let count = rng.random_range(dim..=2 * dim);
            let povm = random_povm(dim, count, rng.random())?;
            let phis = random_phases(&mut rng, count);
            let s = hill_climb_phases(&Strategy::new(povm, phis)?, sc, 50, rng.random())?;
            super::average_fidelity(&s, sc)
        })
        .collect::<Result<Vec<f64>>>()?;
    let max_found = found.into_iter().fold(f64::NEG_INFINITY, f64::max);
    Ok(CertificationReport {
        trials,
        max_found,
        bound,
        margin: bound - max_found,
        holds: max_found <= bound + BOUND_MARGIN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::povm::{
        average_fidelity, fourier4_antiparallel_strategy, fourier_strategy_single_circle, Alignment,
    };
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    #[test]
    fn golden_section_finds_cosine_peak() {
        let (x, y) = golden_maximize(|x| (x - 1.234).cos(), 0.0);
        assert!((x.rem_euclid(TAU) - 1.234).abs() < 1e-7);
        assert!((y - 1.0).abs() < 1e-14);
    }

    #[test]
    fn optimal_strategy_is_a_fixed_point() {
        let sc = Scenario::single_circle(2, 1, 1.0).unwrap();
        let s = fourier_strategy_single_circle(2, 1, 1.0).unwrap();
        let before = average_fidelity(&s, &sc).unwrap();
        let after = average_fidelity(&hill_climb_phases(&s, &sc, 100, 0).unwrap(), &sc).unwrap();
        assert!(after >= before);
        assert!(after - before < 1e-10);
    }

    #[test]
    fn climb_never_decreases_the_objective() {
        let sc = Scenario::two_circle(1.0, 0.5).unwrap();
        for seed in 0..10 {
            let s = Strategy::new(
                random_povm(3, 5, seed).unwrap(),
                random_phases(&mut ChaCha8Rng::seed_from_u64(seed), 5),
            )
            .unwrap();
            let mut prev = average_fidelity(&s, &sc).unwrap();
            let mut cur = s;
            for it in 0..4 {
                cur = hill_climb_phases(&cur, &sc, 1, it).unwrap();
                let f = average_fidelity(&cur, &sc).unwrap();
                assert!(f >= prev);
                prev = f;
            }
        }
    }

    #[test]
    fn fourier4_climb_from_zero_phases() {
        let sc = Scenario::opposite(FRAC_PI_2, Alignment::Antiparallel).unwrap();
        let s = fourier4_antiparallel_strategy([0.0; 4]).unwrap();
        let climbed = hill_climb_phases(&s, &sc, 100, 3).unwrap();
        let f = average_fidelity(&climbed, &sc).unwrap();
        let stated = 0.5 + (3.0 + 2f64.sqrt()) / 16.0;
        let best = 0.5 + (1.0 + 2f64.sqrt()) / 8.0;
        assert!(f >= stated);
        assert!((f - best).abs() < 1e-10);
        assert!(f < 0.5 * (1.0 + 0.5f64.sqrt()));
    }

    #[test]
    fn certification_examples() {
        let sc = Scenario::single_circle(1, 1, FRAC_PI_3).unwrap();
        let r = certify_bound(&sc, 200, 7).unwrap();
        assert!(r.holds && r.max_found <= r.bound + 1e-9);
        assert!(r.max_found > 0.75);
        assert_eq!(r, certify_bound(&sc, 200, 7).unwrap());

        let sc = Scenario::two_circle(FRAC_PI_2, 0.0).unwrap();
        let r = certify_bound(&sc, 200, 8).unwrap();
        assert!(r.holds);
        assert!((r.bound - (0.5 + 1.0 / (2.0 * 2f64.sqrt()))).abs() < 1e-12);

        let sc = Scenario::opposite(PI / 3.0, Alignment::Parallel).unwrap();
        assert!(certify_bound(&sc, 200, 9).unwrap().holds);
        assert!(certify_bound(&sc, 0, 9).is_err());
    }
}
