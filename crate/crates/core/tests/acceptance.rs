//! Acceptance criteria 1-10. Each test prints one `[PASS]`/`[FAIL]` line.
//! Run with `cargo test --release --test acceptance -- --nocapture --test-threads 1`.

use std::f64::consts::PI;
use std::time::Instant;

use fourier_laplace::asymptotics::{case1_terms, case2_leading_constant, case2_terms, evaluate_expansion};
use fourier_laplace::evaluator::{evaluate, evaluate_cfg};
use fourier_laplace::saddle::{saddle_bracket, SaddleData};
use fourier_laplace::series::TruncatedSeries;
use fourier_laplace::tauberian::{extremal_remainder, mueger_mellin, mueger_s, mueger_s_main_term, TauberianCase};
use fourier_laplace::verification::{bound_scan, loglog_slope, oracle_eval};
use fourier_laplace::{Complex64, Params, QuadConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(n: u32, name: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {n:>2} {name}: {detail}");
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_oracle_equivalence() {
    let t0 = Instant::now();
    let betas = [c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 1.0), c(2.0, 0.0)];
    let zs: Vec<Complex64> = (0..17)
        .map(|k| {
            let r = 0.3 + 4.7 * k as f64 / 16.0;
            Complex64::from_polar(r, -PI * (k as f64 + 0.5) / 17.0)
        })
        .collect();
    let mut worst = 0.0f64;
    let mut count = 0;
    for &alpha in &[1.5, 2.0, 3.0] {
        for &beta in &betas {
            let p = Params::new(alpha, beta).unwrap();
            for &z in &zs {
                let e = evaluate(&p, z).unwrap().value;
                let o = oracle_eval(&p, z, 1e-13).unwrap().value;
                worst = worst.max((e - o).norm() / o.norm());
                count += 1;
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    report(
        1,
        "oracle equivalence",
        count >= 200 && worst <= 1e-8 && secs < 60.0,
        format!("{count} points, max rel diff {worst:.2e} (tol 1e-8), {secs:.1}s"),
    );
}

#[test]
fn criterion_02_gaussian_anchor() {
    let p = Params::real(2.0, 0.0).unwrap();
    let v = evaluate(&p, c(0.0, 0.0)).unwrap().value;
    let expect = Complex64::from_polar(PI.sqrt() / 2.0, PI / 4.0);
    let err = (v - expect).norm();
    report(2, "closed-form anchor", err <= 1e-10, format!("|F - sqrt(pi)/2 e^(i pi/4)| = {err:.2e}"));
}

#[test]
fn criterion_03_derivative_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = QuadConfig { abs_tol: 1e-16, rel_tol: 1e-15, ..QuadConfig::default() };
    let mut ratios = Vec::new();
    for _ in 0..20 {
        let alpha = rng.gen_range(1.5..3.0);
        let beta = c(rng.gen_range(0.0..1.5), rng.gen_range(-0.5..0.5));
        let z = Complex64::from_polar(rng.gen_range(0.2..2.5), rng.gen_range(-PI..PI));
        let p = Params::new(alpha, beta).unwrap();
        let p1 = p.shift_beta(c(1.0, 0.0));
        let f = |z: Complex64| evaluate_cfg(&p, z, &cfg).unwrap().value;
        let target = -Complex64::i() * evaluate_cfg(&p1, z, &cfg).unwrap().value;
        let err = |h: f64| ((f(z + h) - f(z - h)) / (2.0 * h) - target).norm();
        ratios.push(err(1e-3) / err(5e-4));
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    report(
        3,
        "derivative identity",
        ratios.iter().all(|r| (r - 4.0).abs() <= 0.5),
        format!("20 points, error ratio h=1e-3 vs 5e-4 in [{lo:.4}, {hi:.4}] (want 4 +- 0.5)"),
    );
}

#[test]
fn criterion_04_case1_slopes() {
    let p = Params::real(2.0, 0.0).unwrap();
    let theta = -PI / 2.0;
    let radii = [20.0, 30.0, 45.0, 67.0, 100.0];
    let oracle: Vec<Complex64> = radii
        .iter()
        .map(|&r| oracle_eval(&p, Complex64::from_polar(r, theta), 1e-15).unwrap().value)
        .collect();
    let slope = |n: usize| {
        let e = case1_terms(&p, theta, n).unwrap();
        let errs: Vec<f64> = radii
            .iter()
            .zip(&oracle)
            .map(|(&r, o)| (evaluate_expansion(&e, r, n).unwrap().value - o).norm())
            .collect();
        loglog_slope(&radii, &errs).unwrap()
    };
    let (s1, s2) = (slope(1), slope(2));
    report(
        4,
        "case 1 truncation slopes",
        (s1 + 3.0).abs() <= 0.15 && (s2 + 5.0).abs() <= 0.2,
        format!("1 term {s1:.4} (want -3 +- 0.15), 2 terms {s2:.4} (want -5 +- 0.2)"),
    );
}

#[test]
fn criterion_05_case2_leading_term() {
    let p = Params::real(2.0, 0.0).unwrap();
    let theta = PI / 4.0;
    let e = case2_terms(&p, theta, 1).unwrap();
    let x = e.exp_part.as_ref().unwrap();
    let lead_const = case2_leading_constant(&p, theta);
    let ratio = |r: f64| {
        let v = evaluate(&p, Complex64::from_polar(r, theta)).unwrap().value;
        // log-scaled: ln F - (ln C + g R^p + q ln R)
        let ln_lead = lead_const.ln() + x.growth_coeff * r.powf(x.growth_power) + x.power_exponent * r.ln();
        (v.ln() - ln_lead).exp()
    };
    let (d6, d9) = ((ratio(6.0) - 1.0).norm(), (ratio(9.0) - 1.0).norm());
    // completing the square: F_{2,0}(z) ~ sqrt(pi) e^{i pi/4} e^{-i z^2/4}
    let g_exact = -Complex64::i() * Complex64::from_polar(0.25, 2.0 * theta);
    let c_exact = Complex64::from_polar(PI.sqrt(), PI / 4.0);
    let alg = (x.growth_coeff - g_exact).norm()
        + (x.growth_power - 2.0).abs()
        + x.power_exponent.norm()
        + (x.phase_const * x.d_terms[0] - c_exact).norm()
        + (lead_const - c_exact).norm();
    report(
        5,
        "case 2 leading term",
        d6 <= 0.02 && d9 <= 0.005 && alg < 1e-13,
        format!("|ratio-1| R=6 {d6:.2e} (<=0.02), R=9 {d9:.2e} (<=0.005); closed-form mismatch {alg:.1e}"),
    );
}

#[test]
fn criterion_06_real_axis() {
    let p = Params::real(2.0, 0.0).unwrap();
    let xs = [20.0, 30.0, 45.0, 67.0];
    let errs: Vec<f64> = xs
        .iter()
        .map(|&x: &f64| {
            let f = evaluate(&p, c(x, 0.0)).unwrap().value;
            let approx = -Complex64::i() / x + Complex64::from_polar(PI.sqrt(), PI / 4.0 - x * x / 4.0);
            (f - approx).norm()
        })
        .collect();
    let s = loglog_slope(&xs, &errs).unwrap();
    report(6, "real-axis two-term form", s <= -2.0, format!("fitted slope {s:.4} (want <= -2)"));
}

#[test]
fn criterion_07_saddle_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let alpha = rng.gen_range(1.2..4.0);
        let theta = rng.gen_range(0.02..0.98) * (PI - PI / alpha);
        let beta = c(rng.gen_range(-2.0..3.0), rng.gen_range(-1.0..1.0));
        let sd = SaddleData::sector(alpha, theta, 8);
        let expect = sd.zeta0.powc(beta) / sd.psi().unwrap().coeff(1);
        let got = saddle_bracket(&sd, beta, 0).unwrap();
        worst = worst.max((got - expect).norm() / expect.norm());
    }
    let real = saddle_bracket(&SaddleData::real_axis(2.0, 8), c(0.0, 0.0), 0).unwrap();
    let real_err = (real - 1.0).norm();
    report(
        7,
        "saddle bracket closed form",
        worst <= 1e-12 && real_err <= 1e-12,
        format!("100 draws max rel diff {worst:.2e}; Gaussian real-axis bracket off by {real_err:.1e}"),
    );
}

#[test]
fn criterion_08_series_engine() {
    let order = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let id = TruncatedSeries::identity(order);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut cs: Vec<Complex64> = (0..=order)
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..2.0 * PI)))
            .collect();
        cs[0] = c(0.0, 0.0);
        cs[1] = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        let a = TruncatedSeries::new(cs);
        let back = a.compose(&a.revert().unwrap()).unwrap();
        worst = worst.max(back.max_abs_diff(&id));
    }
    let mut x2 = vec![c(0.0, 0.0); order + 1];
    x2[1] = c(1.0, 0.0);
    x2[2] = c(1.0, 0.0);
    let r = TruncatedSeries::new(x2).revert().unwrap();
    let catalan = [1.0, -1.0, 2.0, -5.0, 14.0];
    let cat_err = catalan
        .iter()
        .enumerate()
        .map(|(k, &v)| (r.coeff(k + 1) - v).norm())
        .fold(0.0, f64::max);
    report(
        8,
        "series engine",
        worst <= 1e-10 && cat_err <= 1e-12,
        format!("compose(a, revert a) max coeff error {worst:.2e} over 50 series; Catalan error {cat_err:.1e}"),
    );
}

#[test]
fn criterion_09_bounds() {
    let p = Params::real(2.0, 0.0).unwrap();
    let xs: Vec<f64> = (0..9).map(|k| 4.0 * 2f64.powf(k as f64 / 2.0)).collect();
    let rep = bound_scan(&p, 0.5, &xs).unwrap();
    let want_neg = -1.0 - p.beta().re;
    let ok = rep.fitted_exponent <= rep.predicted_exponent + 0.1 && (rep.negative_fitted_exponent - want_neg).abs() <= 0.15;
    report(
        9,
        "hourglass bounds",
        ok,
        format!(
            "fitted {:.4} <= predicted {:.4} + 0.1; x<0 slope {:.4} (want {want_neg} +- 0.15)",
            rep.fitted_exponent, rep.predicted_exponent, rep.negative_fitted_exponent
        ),
    );
}

#[test]
fn criterion_10_tauberian_demos() {
    let mut parts = Vec::new();
    let mut ok = true;
    for (kappa, xs) in [(1.0, vec![10.0, 14.0, 20.0, 28.0, 40.0]), (2.0, vec![25.0, 50.0, 100.0, 200.0, 400.0])] {
        let case = TauberianCase::new(kappa, false).unwrap();
        let t = extremal_remainder(&case, &xs, 1e-13).unwrap();
        let s = t.fitted_slope.unwrap();
        let want = -1.0 - 2.0 / kappa;
        ok &= (s - want).abs() <= 0.2;
        parts.push(format!("kappa={kappa} slope {s:.4} (want {want})"));
    }
    let mut worst = 0.0f64;
    for s in [c(2.0, 0.0), c(1.5, 1.0), c(3.0, -2.0)] {
        let m = mueger_mellin(2.0, s, 1e-8).unwrap();
        worst = worst.max((m.numeric - m.closed_form).norm());
    }
    ok &= worst <= 1e-6;
    parts.push(format!("Mellin max diff {worst:.1e} (<= 1e-6)"));
    for (x, bound) in [(3f64.exp(), 0.10), (4f64.exp(), 0.03)] {
        let s = mueger_s(2.0, x, 1e-12).unwrap();
        let rel = (s - x - mueger_s_main_term(2.0, x)).abs() / s;
        ok &= rel <= bound;
        parts.push(format!("S rel err at {x:.2} {rel:.3} (<= {bound})"));
    }
    report(10, "tauberian demos", ok, parts.join("; "));
}
