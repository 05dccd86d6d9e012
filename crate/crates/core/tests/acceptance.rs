//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI, SQRT_2};
use std::process::ExitCode;

use circle_estimation::encoding::{
    binomial, encode_supplied_state, encoding_basis, encoding_weights,
};
use circle_estimation::entropy::{
    circle_average_state, counterexample_entropies, sphere_average_state,
    sphere_average_state_with_order, von_neumann_entropy,
};
use circle_estimation::formulas::{
    d_fmax_two_circle_at_antiparallel, d_fmax_two_circle_at_zero, equatorial_fidelity, fmax_nm,
    fmax_opposite, fmax_two_circle, locc_closed_form,
};
use circle_estimation::locc::locc_average_fidelity_exact;
use circle_estimation::povm::{
    average_fidelity, certify_bound, fourier4_antiparallel_strategy, fourier_povm,
    fourier_strategy_single_circle, monte_carlo_fidelity, opposite_antiparallel_strategy,
    opposite_parallel_strategy, random_povm, two_circle_strategy, validate_povm, Alignment,
    Scenario,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grid(points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |i| PI * i as f64 / (points - 1) as f64)
}

fn interior(points: usize) -> impl Iterator<Item = f64> {
    (1..=points).map(move |i| PI * i as f64 / (points + 1) as f64)
}

fn f(n: usize, m: usize, theta: f64) -> f64 {
    fmax_nm(n, m, theta).expect("valid arguments").value()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_form_attainment() -> Outcome {
    let mut worst = 0.0f64;
    for total in 1..=6 {
        for n in 0..=total {
            for theta in interior(25) {
                let sc = Scenario::single_circle(n, total - n, theta).map_err(|e| e.to_string())?;
                let s = fourier_strategy_single_circle(n, total - n, theta)
                    .map_err(|e| e.to_string())?;
                let v = average_fidelity(&s, &sc).map_err(|e| e.to_string())?;
                worst = worst.max((v - f(n, total - n, theta)).abs());
            }
        }
    }
    ensure(worst < 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.2e}"))
}

fn equatorial_cross_check() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let sum: f64 = (0..n)
            .map(|i| ((binomial(n, i) * binomial(n, i + 1)) as f64).sqrt())
            .sum();
        let oracle = 0.5 + sum / 2f64.powi(n as i32 + 1);
        let closed = equatorial_fidelity(n).map_err(|e| e.to_string())?.value();
        worst = worst
            .max((f(n, 0, FRAC_PI_2) - oracle).abs())
            .max((closed - oracle).abs());
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    ensure((f(1, 0, FRAC_PI_2) - 0.75).abs() < 1e-12, || "n=1".into())?;
    ensure((f(2, 0, FRAC_PI_2) - 0.853553390593).abs() < 1e-12, || {
        "n=2".into()
    })?;
    Ok(format!("n=1..10, max deviation {worst:.2e}"))
}

fn parallel_closed_form() -> Outcome {
    let (mut closed, mut locc) = (0.0f64, 0.0f64);
    for theta in grid(2001) {
        let expect = (1.0 + theta.cos().powi(2)) / 2.0 + theta.sin().powi(3) / (2.0 * SQRT_2);
        closed = closed.max((f(2, 0, theta) - expect).abs());
        let exact = locc_average_fidelity_exact(theta)
            .map_err(|e| e.to_string())?
            .value();
        let cf = locc_closed_form(theta).map_err(|e| e.to_string())?.value();
        locc = locc
            .max((exact - f(2, 0, theta)).abs())
            .max((exact - cf).abs());
    }
    ensure(closed < 1e-14, || {
        format!("closed form deviation {closed:e}")
    })?;
    ensure(locc < 1e-12, || format!("LOCC deviation {locc:e}"))?;
    Ok(format!("closed form {closed:.2e}, LOCC {locc:.2e}"))
}

fn antiparallel_dominance() -> Outcome {
    let min = grid(2001)
        .map(|t| f(1, 1, t) - f(2, 0, t))
        .fold(f64::INFINITY, f64::min);
    ensure(min >= -1e-12, || format!("min difference {min:e}"))?;
    let gap = f(1, 1, FRAC_PI_3) - f(2, 0, FRAC_PI_3);
    ensure(gap > 1e-6, || format!("gap at π/3 {gap:e}"))?;
    for t in [0.0, FRAC_PI_2, PI] {
        let d = (f(1, 1, t) - f(2, 0, t)).abs();
        ensure(d <= 1e-12, || format!("difference {d:e} at θ={t}"))?;
    }
    Ok(format!("min difference {min:.2e}, gap at π/3 {gap:.6}"))
}

fn imbalance_ordering() -> Outcome {
    let mut tightest = f64::INFINITY;
    for total in 2..=4usize {
        for theta in [FRAC_PI_6, FRAC_PI_3, 5.0 * PI / 12.0] {
            let vals: Vec<(usize, f64)> = (0..=total)
                .map(|n| (n.abs_diff(total - n), f(n, total - n, theta)))
                .collect();
            for &(g1, v1) in &vals {
                for &(g2, v2) in &vals {
                    if g1 < g2 {
                        tightest = tightest.min(v1 - v2);
                        ensure(v1 - v2 > 1e-9, || {
                            format!("N={total} θ={theta}: |n−m|={g1} → {v1}, {g2} → {v2}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("smallest separation {tightest:.3e}"))
}

fn off_equator_minima() -> Outcome {
    let pts: Vec<f64> = grid(2001).collect();
    let argmin = |range: &[f64]| {
        range
            .iter()
            .map(|&t| (t, f(2, 0, t)))
            .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    };
    let (left, lv) = argmin(&pts[..=1000]);
    let (right, rv) = argmin(&pts[1000..]);
    let star = (2.0 * SQRT_2 / 3.0).asin();
    let step = PI / 2000.0;
    ensure((left - star).abs() <= step, || {
        format!("left minimizer {left}")
    })?;
    ensure((right - (PI - star)).abs() <= step, || {
        format!("right minimizer {right}")
    })?;
    ensure((lv - rv).abs() < 1e-12, || "asymmetric minima".into())?;
    let excess = f(2, 0, FRAC_PI_2) - lv.min(rv);
    ensure(excess > 1e-3, || format!("equator excess {excess:e}"))?;
    Ok(format!(
        "minimizers {left:.4}, {right:.4} (arcsin(2√2/3) = {star:.4}), equator excess {excess:.4}"
    ))
}

fn two_circle_identities() -> Outcome {
    let mut worst = 0.0f64;
    for theta in grid(201) {
        let tc = |t0: f64| fmax_two_circle(theta, t0).map(|v| v.value());
        let pairs = [
            (tc(0.0), f(2, 0, theta)),
            (tc(PI - 2.0 * theta), f(1, 1, theta)),
            (tc(-theta), f(1, 0, theta)),
            (tc(PI - theta), f(1, 0, theta)),
        ];
        for (a, b) in pairs {
            worst = worst.max((a.map_err(|e| e.to_string())? - b).abs());
        }
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    let top = fmax_two_circle(FRAC_PI_2, 0.0)
        .map_err(|e| e.to_string())?
        .value();
    ensure((top - (0.5 + 0.353553390593)).abs() < 1e-12, || {
        format!("value at (π/2,0) {top}")
    })?;
    Ok(format!("max deviation {worst:.2e}, F(π/2,0) = {top:.12}"))
}

fn derivative_checks() -> Outcome {
    let raw = |theta: f64, theta0: f64| {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let h = (theta + theta0) / 2.0;
        let n = (c * h.sin()).hypot(s * h.cos());
        let s2 = theta.sin().powi(2);
        1.0 - s2 / 2.0 + s2 * (theta0 / 2.0).cos() / 2.0 * n
    };
    let fd =
        |theta: f64, theta0: f64| (raw(theta, theta0 + 1e-5) - raw(theta, theta0 - 1e-5)) / 2e-5;
    let mut worst = 0.0f64;
    for (i, theta) in grid(50).enumerate() {
        let d0 = d_fmax_two_circle_at_zero(theta).map_err(|e| e.to_string())?;
        let da = d_fmax_two_circle_at_antiparallel(theta).map_err(|e| e.to_string())?;
        worst = worst
            .max((d0 - fd(theta, 0.0)).abs())
            .max((da - fd(theta, PI - 2.0 * theta)).abs());
        let endpoint = i == 0 || i == 49;
        ensure(
            (d0.abs() < 1e-12) == endpoint && (da.abs() < 1e-12) == endpoint,
            || format!("unexpected zero pattern at θ={theta}"),
        )?;
    }
    ensure(worst < 1e-7, || {
        format!("max finite-difference deviation {worst:e}")
    })?;
    let mid = d_fmax_two_circle_at_zero(FRAC_PI_2)
        .map_err(|e| e.to_string())?
        .abs()
        + d_fmax_two_circle_at_antiparallel(FRAC_PI_2)
            .map_err(|e| e.to_string())?
            .abs();
    ensure(mid < 1e-12, || format!("nonzero at π/2: {mid:e}"))?;
    Ok(format!("max finite-difference deviation {worst:.2e}"))
}

fn opposite_circles() -> Outcome {
    let stated = [0.0, 7.0 * PI / 4.0, PI, FRAC_PI_2];
    let (mut named, mut dft4) = (0.0f64, 0.0f64);
    for theta in interior(30) {
        let opt = 0.5 * (1.0 + theta.sin().powi(3) / SQRT_2);
        let par = Scenario::opposite(theta, Alignment::Parallel).map_err(|e| e.to_string())?;
        let anti = Scenario::opposite(theta, Alignment::Antiparallel).map_err(|e| e.to_string())?;
        let fp = average_fidelity(
            &opposite_parallel_strategy(theta).map_err(|e| e.to_string())?,
            &par,
        )
        .map_err(|e| e.to_string())?;
        let fa = average_fidelity(
            &opposite_antiparallel_strategy(theta).map_err(|e| e.to_string())?,
            &anti,
        )
        .map_err(|e| e.to_string())?;
        named = named.max((fp - opt).abs()).max((fa - opt).abs());
        let f4 = average_fidelity(
            &fourier4_antiparallel_strategy(stated).map_err(|e| e.to_string())?,
            &anti,
        )
        .map_err(|e| e.to_string())?;
        dft4 = dft4.max((f4 - (0.5 + (3.0 + SQRT_2) * theta.sin().powi(3) / 16.0)).abs());
        let below = fmax_opposite(theta).map_err(|e| e.to_string())?.value() - f4;
        ensure(below > 0.0, || {
            format!("DFT-4 not below optimum at θ={theta}")
        })?;
    }
    ensure(named < 1e-10, || {
        format!("named strategies deviate by {named:e}")
    })?;
    ensure(dft4 < 1e-10, || format!("DFT-4 deviates by {dft4:e}"))?;
    Ok(format!(
        "DFT-3/Haar-like deviation {named:.2e}, DFT-4 deviation {dft4:.2e}"
    ))
}

fn bound_certification() -> Outcome {
    let t = FRAC_PI_3;
    let scenarios = [
        Scenario::single_circle(1, 1, t),
        Scenario::single_circle(2, 0, t),
        Scenario::two_circle(t, 0.3),
        Scenario::opposite(t, Alignment::Parallel),
        Scenario::opposite(t, Alignment::Antiparallel),
    ];
    let mut margins = Vec::new();
    for (i, sc) in scenarios.into_iter().enumerate() {
        let sc = sc.map_err(|e| e.to_string())?;
        let r = certify_bound(&sc, 200, 1000 + i as u64).map_err(|e| e.to_string())?;
        ensure(r.max_found <= r.bound + 1e-9, || {
            format!("{sc:?}: max {} > bound {}", r.max_found, r.bound)
        })?;
        margins.push(format!("{:.1e}", r.margin));
    }
    Ok(format!("margins [{}]", margins.join(", ")))
}

fn monte_carlo_consistency() -> Outcome {
    let t = FRAC_PI_3;
    let scenarios = [
        Scenario::single_circle(1, 1, t),
        Scenario::single_circle(2, 0, t),
        Scenario::two_circle(t, 0.3),
        Scenario::opposite(t, Alignment::Parallel),
        Scenario::opposite(t, Alignment::Antiparallel),
    ];
    let mut hits = 0;
    let mut total = 0;
    for sc in scenarios {
        let sc = sc.map_err(|e| e.to_string())?;
        let s = sc.named_optimal_strategy().map_err(|e| e.to_string())?;
        let exact = average_fidelity(&s, &sc).map_err(|e| e.to_string())?;
        for seed in 0..4 {
            let mc = monte_carlo_fidelity(&s, &sc, 100_000, seed).map_err(|e| e.to_string())?;
            total += 1;
            if (mc.mean - exact).abs() < 4.0 * mc.std_error {
                hits += 1;
            }
        }
    }
    ensure(hits >= 19, || format!("{hits}/{total} within 4·SE"))?;
    Ok(format!("{hits}/{total} within 4·SE"))
}

fn entropy_checks() -> Outcome {
    let s = |n, m, t| circle_average_state(n, m, t).map(|r| von_neumann_entropy(&r));
    let mut min = f64::INFINITY;
    for (i, theta) in grid(2001).enumerate() {
        let d = s(1, 1, theta).map_err(|e| e.to_string())?
            - s(2, 0, theta).map_err(|e| e.to_string())?;
        min = min.min(d);
        if i == 0 || i == 1000 || i == 2000 {
            ensure(d.abs() <= 1e-10, || {
                format!("no equality at θ={theta}: {d:e}")
            })?;
        }
    }
    ensure(min >= -1e-10, || format!("min difference {min:e}"))?;

    let sp =
        von_neumann_entropy(&sphere_average_state(Alignment::Parallel).map_err(|e| e.to_string())?);
    let sa = von_neumann_entropy(
        &sphere_average_state(Alignment::Antiparallel).map_err(|e| e.to_string())?,
    );
    let oracle_p = von_neumann_entropy(
        &sphere_average_state_with_order(Alignment::Parallel, 96, 96).map_err(|e| e.to_string())?,
    );
    let oracle_a = von_neumann_entropy(
        &sphere_average_state_with_order(Alignment::Antiparallel, 96, 96)
            .map_err(|e| e.to_string())?,
    );
    ensure(
        (sp - oracle_p).abs() < 1e-6 && (sp - 1.58496).abs() < 1e-5,
        || format!("parallel {sp}"),
    )?;
    ensure(
        (sa - oracle_a).abs() < 1e-6 && (sa - 1.79248).abs() < 1e-5,
        || format!("antiparallel {sa}"),
    )?;

    let c = counterexample_entropies().map_err(|e| e.to_string())?;
    ensure(c.s_e2 > c.s_e1, || "sE2 ≤ sE1".into())?;
    ensure(
        (c.s_e2 - 0.60094).abs() < 1e-4 && (c.s_e1 - 0.14950).abs() < 1e-4,
        || format!("counterexample ({}, {})", c.s_e1, c.s_e2),
    )?;
    Ok(format!(
        "circle min difference {min:.2e}; sphere {sp:.6} / {sa:.6}; sE2 {:.6} > sE1 {:.6}",
        c.s_e2, c.s_e1
    ))
}

fn structural_suite() -> Outcome {
    let base = fourier_povm(4).map_err(|e| e.to_string())?;
    ensure(validate_povm(&base).verdict, || "Fourier-4 rejected".into())?;

    let mut neg = base.clone();
    neg.elements_mut()[0].weight = -0.5;
    ensure(!validate_povm(&neg).verdict, || {
        "negative weight accepted".into()
    })?;

    let mut long = base.clone();
    long.elements_mut()[1].coeffs[0] *= 1.1;
    ensure(!validate_povm(&long).verdict, || {
        "non-unit vector accepted".into()
    })?;

    let mut incomplete = base.clone();
    incomplete.elements_mut()[2].weight *= 2.0;
    ensure(!validate_povm(&incomplete).verdict, || {
        "broken completeness accepted".into()
    })?;

    let theta = 1.0;
    let builders = [
        fourier_strategy_single_circle(3, 2, theta),
        two_circle_strategy(theta, 0.4),
        opposite_parallel_strategy(theta),
        opposite_antiparallel_strategy(theta),
        fourier4_antiparallel_strategy([0.1, 0.2, 0.3, 0.4]),
    ];
    for b in builders {
        let b = b.map_err(|e| e.to_string())?;
        ensure(validate_povm(b.povm()).verdict, || {
            "builder output rejected".into()
        })?;
    }
    ensure(
        validate_povm(&random_povm(3, 7, 42).map_err(|e| e.to_string())?).verdict,
        || "random POVM rejected".into(),
    )?;

    let mut worst = 0.0f64;
    for total in 1..=8 {
        for n in 0..=total {
            for theta in grid(9) {
                let w = encoding_weights(n, total - n, theta).map_err(|e| e.to_string())?;
                worst = worst.max((w.iter().map(|x| x * x).sum::<f64>() - 1.0).abs());
                let basis = encoding_basis(n, total - n, theta).map_err(|e| e.to_string())?;
                let phi = 0.3 + theta;
                let direct =
                    encode_supplied_state(n, total - n, theta, phi).map_err(|e| e.to_string())?;
                let rebuilt = basis.reconstruct(phi);
                for (a, b) in direct.iter().zip(&rebuilt) {
                    worst = worst.max((a - b).norm());
                }
            }
        }
    }
    ensure(worst < 1e-12, || {
        format!("encoding invariants deviate by {worst:e}")
    })?;
    Ok(format!(
        "all violation classes caught; encoding deviation {worst:.2e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (
            "closed-form attainment (single circle)",
            closed_form_attainment,
        ),
        ("equatorial cross-check", equatorial_cross_check),
        (
            "parallel closed form and LOCC equality",
            parallel_closed_form,
        ),
        ("anti-parallel dominance", antiparallel_dominance),
        ("|N−2n| ordering", imbalance_ordering),
        ("off-equator minima", off_equator_minima),
        ("two-circle identities", two_circle_identities),
        ("derivative checks", derivative_checks),
        ("opposite circles", opposite_circles),
        ("bound certification", bound_certification),
        ("Monte Carlo consistency", monte_carlo_consistency),
        ("entropy", entropy_checks),
        ("structural properties", structural_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
