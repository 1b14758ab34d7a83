//! Explicit Tauberian examples built from `F`.
//!
//! * `tau(x) = exp(i x^{1+1/kappa})`, whose partial integrals approach the
//!   Laplace value at 0 with remainder `O(x^{-1-2/kappa})` after the main term.
//! * The log-smoothed `tau(x) = exp(i x^{1+1/kappa} / log^{1/kappa} x)` for `x >= e`.
//! * `S(x) = int_1^x (1 + cos(log^alpha u)) du`, whose Mellin transform has a
//!   closed form in terms of `F_{alpha,0}`.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{ParamError, Params};
use crate::evaluator::{evaluate_cfg, EvalError};
use crate::quad::{integrate, kronrod_nodes, rate_knots, QuadConfig};
use crate::verification::loglog_slope;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const MAX_KNOTS: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TauberianError {
    #[error("kappa must be positive and finite (got {0})")]
    BadKappa(f64),
    #[error("x = {x} is below the start {start} of the example")]
    BelowStart { x: f64, start: f64 },
    #[error("Mellin transform needs Re s > 1 (got {0})")]
    BadMellinArgument(Complex64),
    #[error("quadrature tolerance not met ({abs_err:.3e} > {tol:.3e})")]
    Tolerance { abs_err: f64, tol: f64 },
    #[error("too many oscillations for the quadrature budget")]
    TooOscillatory,
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauberianCase {
    kappa: f64,
    smoothed: bool,
}

impl TauberianCase {
    pub fn new(kappa: f64, smoothed: bool) -> Result<Self, TauberianError> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(TauberianError::BadKappa(kappa));
        }
        Ok(Self { kappa, smoothed })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn smoothed(&self) -> bool {
        self.smoothed
    }

    /// `1 + 1/kappa`.
    pub fn alpha(&self) -> f64 {
        1.0 + 1.0 / self.kappa
    }

    fn start(&self) -> f64 {
        if self.smoothed {
            E
        } else {
            0.0
        }
    }

    /// Phase of `tau` continued to `Re zeta > 0`.
    fn phase(&self, zeta: Complex64) -> Complex64 {
        let p = zeta.powf(self.alpha());
        if self.smoothed {
            p * zeta.ln().powf(-1.0 / self.kappa)
        } else {
            p
        }
    }

    fn phase_derivative(&self, zeta: Complex64) -> Complex64 {
        let a = self.alpha();
        if self.smoothed {
            let l = zeta.ln();
            zeta.powf(a - 1.0) * l.powf(-1.0 / self.kappa) * (a - 1.0 / (self.kappa * l))
        } else {
            a * zeta.powf(a - 1.0)
        }
    }

    pub fn tau(&self, x: f64) -> Complex64 {
        if x < self.start() {
            return Complex64::new(0.0, 0.0);
        }
        (I * self.phase(Complex64::new(x, 0.0))).exp()
    }

    /// `e^{i phase(x)} / (i phase'(x))` with the leading part of `phase'`.
    pub fn main_term(&self, x: f64) -> Complex64 {
        let a = self.alpha();
        let zeta = Complex64::new(x, 0.0);
        let lead = if self.smoothed {
            a * x.powf(a - 1.0) * x.ln().powf(-1.0 / self.kappa)
        } else {
            a * x.powf(a - 1.0)
        };
        (I * self.phase(zeta)).exp() / (I * lead)
    }

    /// Predicted decay exponent of the residual; the smoothed case carries a `log^{1/kappa - 1}` factor.
    pub fn predicted_slope(&self) -> f64 {
        if self.smoothed {
            -1.0 / self.kappa
        } else {
            -1.0 - 2.0 / self.kappa
        }
    }
}

fn oscillatory_integral(
    f: impl Fn(f64) -> Complex64,
    rate: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Complex64, TauberianError> {
    if hi <= lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let knots = rate_knots(lo, hi, rate, 3.0, MAX_KNOTS).ok_or(TauberianError::TooOscillatory)?;
    let cfg = QuadConfig {
        abs_tol: tol,
        rel_tol: 1e-14,
        max_intervals: 4 * MAX_KNOTS,
    };
    let r = integrate(f, &knots, &cfg);
    if r.converged {
        Ok(r.result.value)
    } else {
        Err(TauberianError::Tolerance {
            abs_err: r.result.abs_err,
            tol,
        })
    }
}

/// `int_0^x tau(t) dt`.
pub fn tau_partial_integral(case: &TauberianCase, x: f64, tol: f64) -> Result<Complex64, TauberianError> {
    let start = case.start();
    if x < start {
        if case.smoothed {
            return Err(TauberianError::BelowStart { x, start });
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    oscillatory_integral(
        |t| case.tau(t),
        |t| case.phase_derivative(Complex64::new(t.max(1e-300), 0.0)).norm() + 1.0,
        start,
        x,
        tol,
    )
}

/// `int_0^inf tau`, i.e. the Laplace transform of `tau` at 0.
pub fn laplace_at_zero(case: &TauberianCase, tol: f64) -> Result<Complex64, TauberianError> {
    if !case.smoothed {
        let p = Params::real(case.alpha(), 0.0)?;
        let cfg = QuadConfig::default().with_abs_tol(tol);
        return Ok(evaluate_cfg(&p, Complex64::new(0.0, 0.0), &cfg)?.value);
    }
    // zeta = e + s e^{i gamma}; the phase gains a positive imaginary part along the ray
    let gamma = PI / (2.0 * case.alpha());
    let dir = Complex64::from_polar(1.0, gamma);
    let point = |s: f64| Complex64::new(E, 0.0) + dir * s;
    let mut s_end = 1.0;
    while (I * case.phase(point(s_end))).re > -46.0 {
        s_end *= 1.2;
    }
    let v = oscillatory_integral(
        |s| (I * case.phase(point(s))).exp() * dir,
        |s| case.phase_derivative(point(s)).norm() + 1.0,
        0.0,
        s_end,
        tol,
    )?;
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemainderRow {
    pub x: f64,
    pub partial: Complex64,
    pub main_term: Complex64,
    pub residual: Complex64,
    pub abs_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderTable {
    pub laplace_at_zero: Complex64,
    pub rows: Vec<RemainderRow>,
    pub fitted_slope: Option<f64>,
    pub predicted_slope: f64,
}

/// Residual `int_0^x tau - L{tau; 0} - main(x)` on each `x`.
pub fn extremal_remainder(case: &TauberianCase, xs: &[f64], tol: f64) -> Result<RemainderTable, TauberianError> {
    let l0 = laplace_at_zero(case, tol)?;
    let rows: Result<Vec<RemainderRow>, TauberianError> = xs
        .par_iter()
        .map(|&x| {
            let partial = tau_partial_integral(case, x, tol)?;
            let main_term = case.main_term(x);
            let residual = partial - l0 - main_term;
            Ok(RemainderRow {
                x,
                partial,
                main_term,
                residual,
                abs_residual: residual.norm(),
            })
        })
        .collect();
    let rows = rows?;
    let rx: Vec<f64> = rows.iter().map(|r| r.x).collect();
    let ry: Vec<f64> = rows.iter().map(|r| r.abs_residual).collect();
    Ok(RemainderTable {
        laplace_at_zero: l0,
        fitted_slope: loglog_slope(&rx, &ry),
        predicted_slope: case.predicted_slope(),
        rows,
    })
}

/// `S(x) = int_0^{ln x} (1 + cos v^alpha) e^v dv`.
pub fn mueger_s(alpha: f64, x: f64, tol: f64) -> Result<f64, TauberianError> {
    if x <= 1.0 {
        return Ok(0.0);
    }
    let f = |v: f64| Complex64::new((1.0 + v.powf(alpha).cos()) * v.exp(), 0.0);
    let u = x.ln();
    let v = oscillatory_integral(f, |v| alpha * v.powf(alpha - 1.0) + 1.0, 0.0, u, tol * x)?;
    Ok(v.re)
}

/// `x sin(log^alpha x) / (alpha log^{alpha-1} x)`, the oscillating part of `S(x) - x`.
pub fn mueger_s_main_term(alpha: f64, x: f64) -> f64 {
    let l = x.ln();
    x * l.powf(alpha).sin() / (alpha * l.powf(alpha - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinPair {
    pub numeric: Complex64,
    pub closed_form: Complex64,
    pub numeric_err: f64,
}

/// `1/(s-1) - 1/s + (F(i(1-s)) + conj F(i(1-conj s)))/(2s)`.
pub fn mueger_closed_form(alpha: f64, s: Complex64, tol: f64) -> Result<Complex64, TauberianError> {
    let p = Params::real(alpha, 0.0)?;
    let cfg = QuadConfig::default().with_abs_tol(tol / 10.0);
    let f1 = evaluate_cfg(&p, I * (1.0 - s), &cfg)?.value;
    let f2 = evaluate_cfg(&p, I * (1.0 - s.conj()), &cfg)?.value;
    Ok(1.0 / (s - 1.0) - 1.0 / s + (f1 + f2.conj()) / (2.0 * s))
}

/// Numeric `int_1^inf S(x) x^{-s-1} dx` against its closed form.
///
/// After `x = e^u` the integrand is `S(e^u) e^{-u} e^{(1-s) u}`. The scaled
/// `S(e^u) e^{-u}` is accumulated along the sorted outer nodes, so each inner
/// piece is a short integral between neighbouring nodes.
pub fn mueger_mellin(alpha: f64, s: Complex64, tol: f64) -> Result<MellinPair, TauberianError> {
    if !(s.re > 1.0) {
        return Err(TauberianError::BadMellinArgument(s));
    }
    Params::real(alpha, 0.0)?;
    // tail beyond U is below 2 e^{(1-Re s) U} / (Re s - 1)
    let sr = s.re - 1.0;
    let u_end = (20.0 / (tol * sr)).ln() / sr;
    let speed = |u: f64| alpha * u.powf(alpha - 1.0) + s.im.abs() + 1.0;
    let mut panels = vec![0.0];
    let mut u = 0.0;
    while u < u_end {
        u = (u + (1.5 / speed(u)).min(0.25)).min(u_end);
        panels.push(u);
    }
    let inner_cfg = QuadConfig {
        abs_tol: 1e-17,
        rel_tol: 1e-15,
        max_intervals: 64,
    };
    let mut scaled = 0.0; // S(e^u) e^{-u}
    let mut at = 0.0;
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for w in panels.windows(2) {
        let mut gauss = Complex64::new(0.0, 0.0);
        let mut panel = Complex64::new(0.0, 0.0);
        for (node, wk, wg) in kronrod_nodes(w[0], w[1]) {
            // advance the accumulated inner integral from `at` to `node`
            let top = node;
            let piece = integrate(
                |v: f64| Complex64::new((1.0 + v.powf(alpha).cos()) * (v - top).exp(), 0.0),
                &[at, node],
                &inner_cfg,
            );
            scaled = scaled * (at - node).exp() + piece.result.value.re;
            err += piece.result.abs_err * (-(sr) * node).exp();
            at = node;
            let g = scaled * ((1.0 - s) * node).exp();
            panel += g * wk;
            gauss += g * wg;
        }
        err += (panel - gauss).norm();
        kronrod += panel;
    }
    let closed_form = mueger_closed_form(alpha, s, tol)?;
    let tail = 2.0 * (-sr * u_end).exp() / sr;
    let numeric_err = err + tail;
    if numeric_err > tol {
        return Err(TauberianError::Tolerance {
            abs_err: numeric_err,
            tol,
        });
    }
    Ok(MellinPair {
        numeric: kronrod,
        closed_form,
        numeric_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_basics() {
        let c = TauberianCase::new(1.0, false).unwrap();
        assert_eq!(c.alpha(), 2.0);
        assert_eq!(tau_partial_integral(&c, 0.0, 1e-12).unwrap(), Complex64::new(0.0, 0.0));
        assert!((c.main_term(100.0).norm() - 0.005).abs() < 1e-15);
        let s = TauberianCase::new(1.0, true).unwrap();
        assert_eq!(s.tau(2.0), Complex64::new(0.0, 0.0));
        assert!(TauberianCase::new(0.0, false).is_err());
    }

    #[test]
    fn partial_integral_self_convergence() {
        let c = TauberianCase::new(1.0, false).unwrap();
        let a = tau_partial_integral(&c, 10.0, 1e-13).unwrap();
        // halved-step composite reference
        let knots: Vec<f64> = (0..=4000).map(|k| k as f64 * 10.0 / 4000.0).collect();
        let cfg = QuadConfig::default().with_abs_tol(1e-14);
        let b = integrate(|t| c.tau(t), &knots, &cfg).result.value;
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn remainder_decays_fast() {
        let c = TauberianCase::new(1.0, false).unwrap();
        let t = extremal_remainder(&c, &[10.0, 20.0, 40.0], 1e-13).unwrap();
        let slope = t.fitted_slope.unwrap();
        assert!((slope + 3.0).abs() < 0.25, "{slope}");
    }

    #[test]
    fn s_function_and_main_term() {
        for &(x, bound) in &[(3f64.exp(), 0.10), (4f64.exp(), 0.03)] {
            let s = mueger_s(2.0, x, 1e-12).unwrap();
            let rel = (s - x - mueger_s_main_term(2.0, x)).abs() / s;
            assert!(rel < bound, "{x}: {rel}");
        }
        assert_eq!(mueger_s(2.0, 1.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn mellin_at_two() {
        let m = mueger_mellin(2.0, Complex64::new(2.0, 0.0), 1e-8).unwrap();
        assert!((m.numeric - m.closed_form).norm() < 1e-6, "{} vs {}", m.numeric, m.closed_form);
        assert!(m.closed_form.im.abs() < 1e-12);
        assert!(mueger_mellin(2.0, Complex64::new(0.5, 0.0), 1e-8).is_err());
    }
}
