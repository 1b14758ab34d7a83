//! Independent quadrature oracle, expansion-vs-oracle reports and growth-bound scans.
//!
//! The oracle reuses only the Gauss-Kronrod driver and the gamma function.
//! Its contours, knot placement, finite-part handling and tail cutoffs are
//! written separately from [`crate::evaluator`].

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotics::{evaluate_expansion, expansion_on_ray, AsymptoticError, CaseTag};
use crate::domain::Params;
use crate::evaluator::{evaluate, split_constant, EvalError};
use crate::quad::{integrate, QuadConfig, QuadResult};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// The direct path is abandoned beyond this many oscillation periods.
const MAX_DIRECT_PERIODS: f64 = 1e5;

/// Left edge of the sampled part of the unit interval.
const DELTA: f64 = 1.0 / 16.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("oracle tolerance not met on the {piece}: {abs_err:.3e} > {tol:.3e}")]
    Tolerance {
        piece: &'static str,
        abs_err: f64,
        tol: f64,
    },
    #[error("oracle integrand exceeds the overflow envelope (ln {0:.1})")]
    Overflow(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Asymptotic(#[from] AsymptoticError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn fact(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// One straight piece of the oracle path: `t` in `[lo, hi]` on the ray `e^{i gamma}`.
struct RayPiece {
    a: Complex64,
    w: Complex64,
}

impl RayPiece {
    fn new(params: &Params, z: Complex64, gamma: f64) -> Self {
        Self {
            a: I * (I * params.alpha() * gamma).exp(),
            w: -I * z * (I * gamma).exp(),
        }
    }

    fn exponent(&self, params: &Params, t: f64) -> Complex64 {
        params.beta() * t.ln() + self.a * t.powf(params.alpha()) + self.w * t
    }

    /// Panels short enough that the phase moves by at most ~3 radians each.
    fn knots(&self, params: &Params, lo: f64, hi: f64) -> Vec<f64> {
        let alpha = params.alpha();
        let mut k = vec![lo];
        let mut t = lo;
        while t < hi {
            let speed = alpha * self.a.norm() * t.powf(alpha - 1.0)
                + self.w.norm()
                + params.beta().norm() / t.max(1e-300);
            // look at the far end of the step as well
            let mut h = (3.0 / speed).min(1.0).min(hi - t);
            let far = alpha * self.a.norm() * (t + h).powf(alpha - 1.0) + self.w.norm();
            h = h.min(3.0 / far.max(1e-300));
            t = (t + h).min(hi);
            k.push(t);
        }
        k
    }
}

fn run(
    piece: &'static str,
    f: impl Fn(f64) -> Complex64,
    knots: &[f64],
    tol: f64,
) -> Result<QuadResult, OracleError> {
    let cfg = QuadConfig {
        abs_tol: tol,
        rel_tol: 1e-13,
        max_intervals: 400_000,
    };
    let out = integrate(f, knots, &cfg);
    // converged also covers the roundoff floor, where abs_err stays as reported
    if out.converged || out.result.abs_err <= tol.max(cfg.rel_tol * out.result.value.norm()) {
        Ok(out.result)
    } else {
        Err(OracleError::Tolerance {
            piece,
            abs_err: out.result.abs_err,
            tol,
        })
    }
}

/// Finite part on `[0, 1]` of the first ray: exact termwise on `[0, DELTA]`,
/// sampled with explicit polynomial subtraction on `[DELTA, 1]`.
fn oracle_unit(params: &Params, ray: &RayPiece, tol: f64) -> Result<QuadResult, OracleError> {
    let alpha = params.alpha();
    let beta = params.beta();
    let subtracted = params.subtraction_set();
    let coef = |n: u32, m: u32| ray.a.powu(n) * ray.w.powu(m) / (fact(n) * fact(m));

    let mut head = Complex64::new(0.0, 0.0);
    let nm = 60u32;
    for n in 0..nm {
        for m in 0..120u32 {
            if subtracted.contains(&(n, m)) {
                continue;
            }
            let s = params.exponent(n, m);
            let t = coef(n, m) * (s * DELTA.ln()).exp() / s;
            head += t;
            if m > 10 && t.norm() < 1e-22 {
                break;
            }
        }
    }

    let poly = |t: f64| -> Complex64 {
        subtracted
            .iter()
            .map(|&(n, m)| coef(n, m) * t.powf(n as f64 * alpha + m as f64))
            .sum()
    };
    let f = |t: f64| {
        let e = (ray.a * t.powf(alpha) + ray.w * t).exp();
        (beta * t.ln()).exp() * (e - poly(t))
    };
    let body = run("unit interval", f, &ray.knots(params, DELTA, 1.0), tol)?;

    let primed: Complex64 = subtracted
        .iter()
        .filter(|&&(n, m)| !params.is_resonant(n, m))
        .map(|&(n, m)| coef(n, m) / params.exponent(n, m))
        .sum();
    Ok(QuadResult {
        value: body.value + head + primed,
        ..body
    })
}

/// Cutoff where `Re` of the exponent has fallen 50 units below zero for good.
fn decay_cutoff(params: &Params, ray: &RayPiece, from: f64) -> f64 {
    let mut t = from.max(1.0);
    for _ in 0..10_000 {
        let g = ray.exponent(params, t).re;
        let dt = 1e-6 * t;
        let slope = (ray.exponent(params, t + dt).re - g) / dt;
        if g < -50.0 && slope < 0.0 {
            return t;
        }
        t *= 1.05;
    }
    t
}

fn oracle_ray(
    params: &Params,
    ray: &RayPiece,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadResult, OracleError> {
    if hi <= lo {
        return Ok(QuadResult::exact(Complex64::new(0.0, 0.0)));
    }
    let f = |t: f64| ray.exponent(params, t).exp();
    run("ray", f, &ray.knots(params, lo, hi), tol)
}

fn resonance_term(params: &Params, z: Complex64, gamma: f64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for p in params.all_resonances() {
        s += I.powu(p.n) * (-I * z).powu(p.m) / (fact(p.n) * fact(p.m));
    }
    s * I * gamma
}

fn direct_periods(params: &Params, z: Complex64) -> f64 {
    let t = (50.0 + params.beta().re.abs() * 5.0) / -z.im;
    (t.powf(params.alpha()) + z.norm() * t) / (2.0 * PI)
}

/// Real-axis path `int_0^T`, with decay from `Im z < 0` only.
fn oracle_direct(params: &Params, z: Complex64, tol: f64) -> Result<QuadResult, OracleError> {
    let ray = RayPiece::new(params, z, 0.0);
    let unit = oracle_unit(params, &ray, tol / 4.0)?;
    let end = decay_cutoff(params, &ray, 1.0);
    let tail = oracle_ray(params, &ray, 1.0, end, tol / 4.0)?;
    Ok(unit + tail)
}

/// Maximum of `Re` of the exponent along inner segment and arc, sampled.
fn split_envelope(params: &Params, z: Complex64, gamma_in: f64, gamma_out: f64, rho: f64) -> f64 {
    let ray = RayPiece::new(params, z, gamma_in);
    let mut best = f64::NEG_INFINITY;
    for k in 1..=200 {
        let t = rho * k as f64 / 200.0;
        best = best.max((ray.a * t.powf(params.alpha()) + ray.w * t).re);
        let eta = gamma_in + (gamma_out - gamma_in) * k as f64 / 200.0;
        let zeta = Complex64::from_polar(rho, eta);
        best = best.max((I * zeta.powf(params.alpha()) - I * z * zeta).re);
    }
    best
}

fn oracle_split(params: &Params, z: Complex64, tol: f64) -> Result<QuadResult, OracleError> {
    let alpha = params.alpha();
    let beta = params.beta();
    let gamma_out = PI / (2.0 * alpha);
    let rho = split_constant(params) * z.norm().max(1.0).powf(params.kappa());
    let (gamma_in, env) = (0..=8)
        .filter(|&k| k != 4)
        .map(|k| k as f64 * PI / (8.0 * alpha))
        .map(|g| (g, split_envelope(params, z, g, gamma_out, rho)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap();
    if env > 575.0 {
        return Err(OracleError::Overflow(env));
    }
    let inner = RayPiece::new(params, z, gamma_in);
    let pre_in = (I * gamma_in * (beta + 1.0)).exp();
    let unit = oracle_unit(params, &inner, tol / 8.0)?;
    let seg = oracle_ray(params, &inner, 1.0, rho, tol / 8.0)?;

    // arc zeta = rho e^{i eta}, d zeta = i zeta d eta
    let arc_f = |eta: f64| {
        let lz = Complex64::new(rho.ln(), eta);
        let zeta = lz.exp();
        (beta * lz + I * (alpha * lz).exp() - I * z * zeta).exp() * I * zeta
    };
    let n_arc = ((rho.powf(alpha) * alpha + z.norm() * rho) * (gamma_out - gamma_in).abs() / 3.0)
        .ceil()
        .max(4.0) as usize;
    let (lo, hi) = (gamma_in.min(gamma_out), gamma_in.max(gamma_out));
    let knots: Vec<f64> = (0..=n_arc).map(|k| lo + (hi - lo) * k as f64 / n_arc as f64).collect();
    let mut arc = run("arc", arc_f, &knots, tol / 8.0)?;
    if gamma_in > gamma_out {
        arc = arc.scale(Complex64::new(-1.0, 0.0));
    }

    let outer = RayPiece::new(params, z, gamma_out);
    let end = decay_cutoff(params, &outer, rho);
    let out = oracle_ray(params, &outer, rho, end.max(rho), tol / 8.0)?
        .scale((I * gamma_out * (beta + 1.0)).exp());

    Ok((unit + seg).scale(pre_in) + arc + out + QuadResult::exact(resonance_term(params, z, gamma_in)))
}

/// Brute-force value of `F(z)` with absolute error at most `tol`.
pub fn oracle_eval(params: &Params, z: Complex64, tol: f64) -> Result<QuadResult, OracleError> {
    if z.im < 0.0 && direct_periods(params, z) <= MAX_DIRECT_PERIODS {
        oracle_direct(params, z, tol)
    } else {
        oracle_split(params, z, tol)
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// [`loglog_slope`] after dropping the smallest third of the abscissae.
pub fn windowed_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let skip = xs.len() / 3;
    loglog_slope(&xs[skip..], &ys[skip..])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub radius: f64,
    pub oracle: Complex64,
    pub expansion: Complex64,
    pub abs_error: f64,
    /// `abs_error` divided by the first omitted term.
    pub normalized_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub fitted_slope: Option<f64>,
    /// `None` where the error is not a power of `R` (sector 2).
    pub predicted_slope: Option<f64>,
}

/// Expected log-log slope of the truncation error after `n_terms` terms.
pub fn predicted_error_slope(params: &Params, case: CaseTag, n_terms: usize) -> Option<f64> {
    let alg = -(params.beta().re + n_terms as f64 * params.alpha() + 1.0);
    let osc = (params.beta().re + 1.0 - params.alpha() / 2.0) * params.kappa()
        - n_terms as f64 * params.alpha() * params.kappa();
    match case {
        CaseTag::Sector1 => Some(alg),
        CaseTag::RayPosReal | CaseTag::RayLower => Some(alg.max(osc)),
        CaseTag::Sector2 => None,
    }
}

/// Oracle against the `n_terms` truncation on the ray `theta`.
pub fn convergence_report(
    params: &Params,
    theta: f64,
    radii: &[f64],
    n_terms: usize,
    tol: f64,
) -> Result<ConvergenceReport, VerifyError> {
    let e = expansion_on_ray(params, theta, n_terms)?;
    let rows: Result<Vec<ConvergenceRow>, VerifyError> = radii
        .par_iter()
        .map(|&r| {
            let z = Complex64::from_polar(r, theta);
            let o = oracle_eval(params, z, tol)?;
            let s = evaluate_expansion(&e, r, n_terms)?;
            let abs_error = (o.value - s.value).norm();
            Ok(ConvergenceRow {
                radius: r,
                oracle: o.value,
                expansion: s.value,
                abs_error,
                normalized_error: abs_error / s.next_term_magnitude,
            })
        })
        .collect();
    let rows = rows?;
    let xs: Vec<f64> = rows.iter().map(|r| r.radius).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.abs_error).collect();
    Ok(ConvergenceReport {
        fitted_slope: windowed_slope(&xs, &ys),
        predicted_slope: predicted_error_slope(params, e.case_tag, n_terms),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub x: f64,
    pub y: f64,
    pub abs_f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundScanReport {
    pub c: f64,
    pub a: f64,
    /// Upper boundary curve and real axis, two samples per abscissa.
    pub samples: Vec<BoundSample>,
    pub fitted_exponent: f64,
    pub predicted_exponent: f64,
    pub log_factor_flag: bool,
    /// Mirror samples at `-x` on the same two curves.
    pub negative_samples: Vec<BoundSample>,
    /// Slope of `ln|F(-x)|` against `ln x` on the real axis.
    pub negative_fitted_exponent: f64,
}

/// Upper edge `C log(2+|x|) / (1+|x|)^kappa` of the hourglass region.
pub fn hourglass_height(params: &Params, c: f64, x: f64) -> f64 {
    c * (2.0 + x.abs()).ln() / (1.0 + x.abs()).powf(params.kappa())
}

/// Growth exponent bound on the hourglass region for `x > 0`.
pub fn predicted_bound_exponent(params: &Params, c: f64) -> (f64, bool) {
    let ac = split_constant(params) * c;
    let rb = params.beta().re;
    if (rb + 1.0).abs() < params.eps_resonance() {
        (ac.max(1.0), true)
    } else if rb > -1.0 {
        (ac + (rb + 1.0) * params.kappa(), false)
    } else {
        (((-1.0 - rb).floor() + 1.0).max(ac), false)
    }
}

/// Sample `|F|` along the hourglass edge and the real axis.
pub fn bound_scan(params: &Params, c: f64, xs: &[f64]) -> Result<BoundScanReport, VerifyError> {
    let sample = |x: f64, y: f64| -> Result<BoundSample, VerifyError> {
        let v = evaluate(params, Complex64::new(x, y))?;
        Ok(BoundSample { x, y, abs_f: v.value.norm() })
    };
    let pairs: Result<Vec<[BoundSample; 4]>, VerifyError> = xs
        .par_iter()
        .map(|&x| {
            let h = hourglass_height(params, c, x);
            Ok([sample(x, h)?, sample(x, 0.0)?, sample(-x, h)?, sample(-x, 0.0)?])
        })
        .collect();
    let pairs = pairs?;
    let top: Vec<f64> = pairs.iter().map(|p| p[0].abs_f.max(p[1].abs_f)).collect();
    let neg: Vec<f64> = pairs.iter().map(|p| p[3].abs_f).collect();
    let (predicted_exponent, log_factor_flag) = predicted_bound_exponent(params, c);
    Ok(BoundScanReport {
        c,
        a: split_constant(params),
        samples: pairs.iter().flat_map(|p| [p[0], p[1]]).collect(),
        fitted_exponent: windowed_slope(xs, &top).unwrap_or(f64::NAN),
        predicted_exponent,
        log_factor_flag,
        negative_samples: pairs.iter().flat_map(|p| [p[2], p[3]]).collect(),
        negative_fitted_exponent: windowed_slope(xs, &neg).unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::evaluate_cfg;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn oracle_gaussian_anchor() {
        let p = Params::real(2.0, 0.0).unwrap();
        let v = oracle_eval(&p, c(0.0, 0.0), 1e-12).unwrap();
        let expect = Complex64::from_polar(PI.sqrt() / 2.0, PI / 4.0);
        assert!((v.value - expect).norm() < 1e-11, "{}", v.value);
    }

    #[test]
    fn oracle_matches_evaluator() {
        let tight = QuadConfig::default().with_abs_tol(1e-14);
        for &(alpha, beta, z) in &[
            (2.0, c(0.0, 0.0), c(0.0, -2.0)),
            (2.0, c(-1.0, 0.0), c(0.0, -1.0)),
            (3.0, c(0.5, 0.0), c(1.5, 0.7)),
            (1.5, c(-0.5, 1.0), c(-3.0, -0.5)),
            (2.5, c(-2.3, 0.0), c(0.4, 2.0)),
        ] {
            let p = Params::new(alpha, beta).unwrap();
            let o = oracle_eval(&p, z, 1e-13).unwrap();
            let e = evaluate_cfg(&p, z, &tight).unwrap();
            let d = (o.value - e.value).norm();
            assert!(d < 1e-9 * e.value.norm().max(1.0), "{alpha} {beta} {z}: {} vs {}", o.value, e.value);
        }
    }

    #[test]
    fn slopes() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-2.5)).collect();
        assert!((loglog_slope(&xs, &ys).unwrap() + 2.5).abs() < 1e-12);
        assert!((windowed_slope(&xs, &ys).unwrap() + 2.5).abs() < 1e-12);
        assert!(loglog_slope(&[1.0], &[1.0]).is_none());
    }

    #[test]
    fn predicted_bound_table() {
        let p = Params::real(2.0, 0.0).unwrap();
        let (e, flag) = predicted_bound_exponent(&p, 0.5);
        assert!((e - 1.75).abs() < 1e-12 && !flag);
        let (_, flag) = predicted_bound_exponent(&Params::real(2.0, -1.0).unwrap(), 0.5);
        assert!(flag);
        let (e, _) = predicted_bound_exponent(&Params::real(2.0, -2.5).unwrap(), 0.5);
        assert_eq!(e, 2.0);
    }

    #[test]
    fn empty_report() {
        let p = Params::real(2.0, 0.0).unwrap();
        let r = convergence_report(&p, -PI / 2.0, &[], 1, 1e-12).unwrap();
        assert!(r.rows.is_empty() && r.fitted_slope.is_none());
        assert_eq!(r.predicted_slope, Some(-3.0));
    }
}
