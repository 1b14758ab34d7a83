//! The entire continuation of `F(z)` by rotated-contour finite-part integrals.
//!
//! Every representation integrates `zeta^beta exp(i zeta^alpha - i z zeta)`
//! along a path from the origin to infinity inside the closed sector
//! `0 <= arg zeta <= pi/alpha`:
//!
//! * `RotateHalf`: the ray `arg zeta = pi/(2 alpha)`, where `i zeta^alpha` is
//!   real and negative. Valid for every `z`.
//! * `RotateFull`: the ray `arg zeta = pi/alpha`. The power term is purely
//!   oscillatory there, so this needs the linear term to decay.
//! * `SplitRadius`: an inner segment (on the real axis or on the
//!   `pi/alpha` ray) up to radius `rho`, a circular arc, and then the
//!   `pi/(2 alpha)` ray. This keeps the integrand bounded near the real
//!   axis and near the lower boundary ray where both pure rotations grow.
//!
//! Along the first ray the finite part at the origin subtracts the Taylor
//! terms `a^n w^m t^{n alpha + m} / (n! m!)` with `m + n alpha + Re beta <= -1`
//! on `[0, 1]` and adds back their primed integrals. A resonant pair adds
//! `i gamma i^n (-i z)^m / (n! m!)` for a first ray at angle `gamma`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::Params;
use crate::quad::{integrate, rate_knots, Integral, QuadConfig, QuadResult};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Envelopes above `ln(1e250)` are refused.
pub const LN_ENVELOPE_GUARD: f64 = 575.646_273_248_511_4;

const MAX_KNOTS: usize = 400_000;
const RADIANS_PER_PANEL: f64 = 4.0;
// e^-46 ~ 1e-20
const TAIL_DROP: f64 = 46.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("integrand envelope exp({ln_envelope:.1}) exceeds the overflow guard; use the asymptotic expansions")]
    Overflow { ln_envelope: f64 },
    #[error("quadrature did not converge on the {piece} ({abs_err:.3e} > {target:.3e})")]
    NonConvergence {
        piece: &'static str,
        abs_err: f64,
        target: f64,
    },
    #[error("representation {0:?} does not converge for this z")]
    NotApplicable(RepresentationTag),
    #[error("integration path needs more than {0} panels")]
    TooOscillatory(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationTag {
    RotateHalf,
    RotateFull,
    SplitRadius,
    /// A ray through the direction of the sector-2 saddle point.
    RotateSaddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub tag: RepresentationTag,
    /// Angle of the ray that reaches infinity.
    pub rotation_angle: f64,
    /// Radius where the split contour leaves its inner segment; infinite otherwise.
    pub split_rho: f64,
    /// Angle of the path leaving the origin.
    pub inner_angle: f64,
}

impl Representation {
    pub fn rotate_half(params: &Params) -> Self {
        let g = PI / (2.0 * params.alpha());
        Self {
            tag: RepresentationTag::RotateHalf,
            rotation_angle: g,
            split_rho: f64::INFINITY,
            inner_angle: g,
        }
    }

    pub fn rotate_full(params: &Params) -> Self {
        let g = PI / params.alpha();
        Self {
            tag: RepresentationTag::RotateFull,
            rotation_angle: g,
            split_rho: f64::INFINITY,
            inner_angle: g,
        }
    }

    /// The ray `arg zeta = pi/(2 alpha) + kappa phi` through the saddle, for `0 < arg z < pi - pi/alpha`.
    pub fn rotate_saddle(params: &Params, z: Complex64) -> Option<Self> {
        let alpha = params.alpha();
        let theta = crate::domain::canonical_angle(z.arg(), alpha);
        if z.norm() == 0.0 || theta <= 0.0 || theta >= crate::domain::angle_window_top(alpha) {
            return None;
        }
        let phi = theta - PI / 2.0 + PI / (2.0 * alpha);
        let g = PI / (2.0 * alpha) + params.kappa() * phi;
        Some(Self {
            tag: RepresentationTag::RotateSaddle,
            rotation_angle: g,
            split_rho: f64::INFINITY,
            inner_angle: g,
        })
    }

    /// Split contour with the inner segment on the real axis.
    pub fn split_radius(params: &Params, z: Complex64) -> Self {
        Self {
            tag: RepresentationTag::SplitRadius,
            rotation_angle: PI / (2.0 * params.alpha()),
            split_rho: default_split_rho(params, z.norm()),
            inner_angle: 0.0,
        }
    }

    /// Split contour with the inner segment on the `pi/alpha` ray.
    pub fn split_radius_lower(params: &Params, z: Complex64) -> Self {
        Self {
            inner_angle: PI / params.alpha(),
            ..Self::split_radius(params, z)
        }
    }

    pub fn is_split(&self) -> bool {
        self.tag == RepresentationTag::SplitRadius
    }
}

/// `A > max(1, (pi/(2 alpha))^kappa)`, with a margin of one half.
pub fn split_constant(params: &Params) -> f64 {
    1.0f64.max((PI / (2.0 * params.alpha())).powf(params.kappa())) + 0.5
}

/// `rho = A max(|z|, 1)^kappa`.
pub fn default_split_rho(params: &Params, radius: f64) -> f64 {
    split_constant(params) * radius.max(1.0).powf(params.kappa())
}

/// Radius at which the fastest-growing ray reaches the overflow guard.
pub fn z_max(alpha: f64) -> f64 {
    // (alpha - 1) (R/alpha)^{alpha/(alpha-1)} = ln(1e250)
    alpha * (LN_ENVELOPE_GUARD / (alpha - 1.0)).powf((alpha - 1.0) / alpha)
}

/// Coefficients of the exponent `a t^alpha + w t` on the ray `arg zeta = gamma`.
fn ray_coefficients(params: &Params, z: Complex64, gamma: f64) -> (Complex64, Complex64) {
    let a = I * Complex64::from_polar(1.0, params.alpha() * gamma);
    let w = -I * z * Complex64::from_polar(1.0, gamma);
    (a, w)
}

fn ln_modulus_on_ray(params: &Params, a: Complex64, w: Complex64, t: f64) -> f64 {
    params.beta().re * t.ln() + a.re * t.powf(params.alpha()) + w.re * t
}

/// Maximum of `Re(a) t^alpha + Re(w) t` over `[lo, hi]`.
fn ray_envelope(alpha: f64, a: Complex64, w: Complex64, lo: f64, hi: f64) -> f64 {
    let phase = |t: f64| a.re * t.powf(alpha) + w.re * t;
    let mut best = phase(lo).max(if hi.is_finite() { phase(hi) } else { f64::NEG_INFINITY });
    if a.re < 0.0 && w.re > 0.0 {
        let t_star = (w.re / (alpha * -a.re)).powf(1.0 / (alpha - 1.0));
        if t_star > lo && t_star < hi {
            best = best.max(phase(t_star));
        }
    }
    best
}

fn arc_envelope(params: &Params, z: Complex64, rho: f64, from: f64, to: f64) -> f64 {
    (0..=128)
        .map(|k| {
            let eta = from + (to - from) * k as f64 / 128.0;
            let zeta = Complex64::from_polar(rho, eta);
            let e = I * Complex64::from_polar(rho.powf(params.alpha()), params.alpha() * eta)
                - I * z * zeta;
            e.re
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Log of the largest integrand modulus along the representation (power factor excluded).
///
/// `None` when the path integral diverges.
pub fn ln_envelope(params: &Params, z: Complex64, rep: &Representation) -> Option<f64> {
    let alpha = params.alpha();
    let (a, w) = ray_coefficients(params, z, rep.inner_angle);
    if rep.is_split() {
        let rho = rep.split_rho;
        let inner = ray_envelope(alpha, a, w, 0.0, rho);
        let arc = arc_envelope(params, z, rho, rep.inner_angle, rep.rotation_angle);
        let (ao, wo) = ray_coefficients(params, z, rep.rotation_angle);
        let outer = ray_envelope(alpha, ao, wo, rho, f64::INFINITY);
        Some(inner.max(arc).max(outer))
    } else {
        if a.re > -1e-12 && w.re >= 0.0 {
            return None;
        }
        Some(ray_envelope(alpha, a, w, 0.0, f64::INFINITY))
    }
}

/// `e^x - sum_{k<=m} x^k/k!`; `m < 0` gives `e^x`.
pub(crate) fn exp_remainder(x: Complex64, m: i64) -> Complex64 {
    if m < 0 {
        return x.exp();
    }
    let m = m as usize;
    if x.norm() <= m as f64 + 2.0 {
        let mut term = Complex64::new(1.0, 0.0);
        for k in 1..=m + 1 {
            term *= x / k as f64;
        }
        let mut sum = term;
        let mut k = m + 1;
        while term.norm() > 1e-17 * sum.norm() && k < m + 400 {
            k += 1;
            term *= x / k as f64;
            sum += term;
        }
        sum
    } else {
        let mut partial = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for k in 0..=m {
            if k > 0 {
                term *= x / k as f64;
            }
            partial += term;
        }
        x.exp() - partial
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn tpow(t: f64, p: Complex64) -> Complex64 {
    (p * t.ln()).exp()
}

fn knots_for(
    params: &Params,
    a: Complex64,
    w: Complex64,
    lo: f64,
    hi: f64,
) -> Result<Vec<f64>, EvalError> {
    let alpha = params.alpha();
    let beta = params.beta();
    let rate = |t: f64| (beta / t + alpha * a * t.powf(alpha - 1.0) + w).norm();
    rate_knots(lo, hi, rate, RADIANS_PER_PANEL, MAX_KNOTS).ok_or(EvalError::TooOscillatory(MAX_KNOTS))
}

fn check(piece: &'static str, itg: Integral, cfg: &QuadConfig) -> Result<QuadResult, EvalError> {
    // the roundoff floor can sit above an absolute target; accept within a small factor
    let target = cfg.target(itg.result.value).max(100.0 * f64::EPSILON * itg.abs_mass);
    if itg.converged || itg.result.abs_err <= target {
        Ok(itg.result)
    } else {
        Err(EvalError::NonConvergence {
            piece,
            abs_err: itg.result.abs_err,
            target,
        })
    }
}

/// Finite part of `int_0^1 t^beta exp(a t^alpha + w t) dt`, primed sum included.
fn fp_unit_on_ray(
    params: &Params,
    a: Complex64,
    w: Complex64,
    cfg: &QuadConfig,
) -> Result<QuadResult, EvalError> {
    let alpha = params.alpha();
    let beta = params.beta();
    let n_top = params.max_subtracted_n();
    let m_top: Vec<i64> = match n_top {
        Some(nt) => (0..=nt)
            .map(|n| params.max_subtracted_m(n).map_or(-1, |m| m as i64))
            .collect(),
        None => Vec::new(),
    };
    let in_set = |n: u32, m: u32| m_top.get(n as usize).is_some_and(|&mt| (m as i64) <= mt);

    // [0, t0]: integrate the unsubtracted Taylor terms exactly
    let t0 = 0.5f64.min(1.0 / (1.0 + w.norm()));
    let mut near = Complex64::new(0.0, 0.0);
    let mut a_term = Complex64::new(1.0, 0.0);
    let t0a = t0.powf(alpha);
    for n in 0u32..200 {
        if n > 0 {
            a_term *= a * t0a / n as f64;
        }
        let mut b_term = Complex64::new(1.0, 0.0);
        let mut row = Complex64::new(0.0, 0.0);
        for m in 0u32..400 {
            if m > 0 {
                b_term *= w * t0 / m as f64;
            }
            if !in_set(n, m) {
                let s = params.exponent(n, m);
                row += b_term / s;
            }
            if m as f64 > w.norm() * t0 + 2.0 && b_term.norm() < 1e-20 {
                break;
            }
        }
        near += a_term * row;
        if n as u32 > n_top.unwrap_or(0) && a_term.norm() * (w.norm() * t0).exp() < 1e-20 {
            break;
        }
    }
    near *= tpow(t0, beta + 1.0);

    // [t0, 1]: the subtracted integrand, written through exponential remainders
    let nt = n_top.map(|v| v as i64).unwrap_or(-1);
    let integrand = |t: f64| {
        let x = a * t.powf(alpha);
        let y = w * t;
        let mut v = y.exp() * exp_remainder(x, nt);
        let mut xn = Complex64::new(1.0, 0.0);
        for (n, &mt) in m_top.iter().enumerate() {
            if n > 0 {
                xn *= x / n as f64;
            }
            v += xn * exp_remainder(y, mt);
        }
        tpow(t, beta) * v
    };
    let knots = knots_for(params, a, w, t0, 1.0)?;
    let body = check("unit interval", integrate(integrand, &knots, cfg), cfg)?;

    let mut primed = Complex64::new(0.0, 0.0);
    for (n, &mt) in m_top.iter().enumerate() {
        for m in 0..=mt.max(-1) {
            if mt < 0 {
                break;
            }
            let (n, m) = (n as u32, m as u32);
            if params.is_resonant(n, m) {
                continue;
            }
            let c = a.powu(n) * w.powu(m) / (factorial(n) * factorial(m));
            primed += c / params.exponent(n, m);
        }
    }
    Ok(body + QuadResult::exact(near + primed))
}

/// `int_lo^hi t^beta exp(a t^alpha + w t) dt`; `hi = inf` picks a cutoff from the decay.
fn ray_segment(
    params: &Params,
    a: Complex64,
    w: Complex64,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, EvalError> {
    let alpha = params.alpha();
    let beta = params.beta();
    let (end, truncation) = if hi.is_finite() {
        (hi, 0.0)
    } else {
        ray_cutoff(params, a, w, lo)?
    };
    if end <= lo {
        return Ok(QuadResult::exact(Complex64::new(0.0, 0.0)));
    }
    let knots = knots_for(params, a, w, lo, end)?;
    let f = |t: f64| (beta * t.ln() + a * t.powf(alpha) + w * t).exp();
    let mut r = check("ray", integrate(f, &knots, cfg), cfg)?;
    r.abs_err += truncation;
    Ok(r)
}

/// Cutoff `T` beyond which the ray integrand stays `e^-46` below its peak,
/// with a bound on the discarded mass.
fn ray_cutoff(params: &Params, a: Complex64, w: Complex64, lo: f64) -> Result<(f64, f64), EvalError> {
    let alpha = params.alpha();
    let rb = params.beta().re;
    if a.re > -1e-12 && w.re >= 0.0 {
        return Err(EvalError::NotApplicable(RepresentationTag::RotateFull));
    }
    let slope = |t: f64| rb / t + alpha * a.re * t.powf(alpha - 1.0) + w.re;
    let g = |t: f64| ln_modulus_on_ray(params, a, w, t);
    let mut peak = g(lo);
    let mut t = lo;
    let mut step = lo.max(1e-3) * 0.05;
    loop {
        let s = slope(t);
        let gt = g(t);
        peak = peak.max(gt);
        // slope is negative from here on once the power term dominates
        let decreasing_for_good = s < 0.0
            && alpha * -a.re * t.powf(alpha - 1.0) >= w.re.max(0.0) + rb.max(0.0) / t
            && (a.re < -1e-12 || rb <= 0.0 || t > rb / -w.re);
        if decreasing_for_good && gt < peak - TAIL_DROP {
            let bound = gt.exp() / s.abs();
            return Ok((t, bound));
        }
        t += step;
        step *= 1.08;
        if !t.is_finite() || t > 1e12 {
            return Err(EvalError::TooOscillatory(MAX_KNOTS));
        }
    }
}

fn arc_segment(
    params: &Params,
    z: Complex64,
    rho: f64,
    from: f64,
    to: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, EvalError> {
    let alpha = params.alpha();
    let beta = params.beta();
    let ln_rho = rho.ln();
    let f = |eta: f64| {
        let log_zeta = Complex64::new(ln_rho, eta);
        let zeta = log_zeta.exp();
        let expo = beta * log_zeta + I * (alpha * log_zeta).exp() - I * z * zeta;
        expo.exp() * I * zeta
    };
    // rate of the exponent with respect to eta
    let rate = |eta: f64| {
        let zeta = Complex64::from_polar(rho, eta);
        (beta + alpha * I * zeta.powf(alpha) - I * z * zeta).norm() + 1.0
    };
    let (lo, hi, sign) = if from <= to { (from, to, 1.0) } else { (to, from, -1.0) };
    if hi - lo == 0.0 {
        return Ok(QuadResult::exact(Complex64::new(0.0, 0.0)));
    }
    let knots = rate_knots(lo, hi, rate, RADIANS_PER_PANEL, MAX_KNOTS)
        .ok_or(EvalError::TooOscillatory(MAX_KNOTS))?;
    let r = check("arc", integrate(f, &knots, cfg), cfg)?;
    Ok(r.scale(Complex64::new(sign, 0.0)))
}

/// `e^{i gamma (beta + 1)}`.
fn ray_prefactor(params: &Params, gamma: f64) -> Complex64 {
    (I * gamma * (params.beta() + 1.0)).exp()
}

fn guard(params: &Params, z: Complex64, rep: &Representation) -> Result<(), EvalError> {
    match ln_envelope(params, z, rep) {
        None => Err(EvalError::NotApplicable(rep.tag)),
        Some(e) if e > LN_ENVELOPE_GUARD => Err(EvalError::Overflow { ln_envelope: e }),
        Some(_) => Ok(()),
    }
}

/// Finite part over `[0, 1]` on the representation's first ray, in the ray variable `t`.
pub fn fp_unit_integral(
    params: &Params,
    z: Complex64,
    rep: &Representation,
    cfg: &QuadConfig,
) -> Result<QuadResult, EvalError> {
    guard(params, z, rep)?;
    let (a, w) = ray_coefficients(params, z, rep.inner_angle);
    fp_unit_on_ray(params, a, w, cfg)
}

/// Everything beyond `t = 1`, normalized by the first ray's prefactor.
pub fn tail_integral(
    params: &Params,
    z: Complex64,
    rep: &Representation,
    cfg: &QuadConfig,
) -> Result<QuadResult, EvalError> {
    guard(params, z, rep)?;
    let (a, w) = ray_coefficients(params, z, rep.inner_angle);
    if !rep.is_split() {
        return ray_segment(params, a, w, 1.0, f64::INFINITY, cfg);
    }
    let rho = rep.split_rho;
    let inner = ray_segment(params, a, w, 1.0, rho, cfg)?;
    let arc = arc_segment(params, z, rho, rep.inner_angle, rep.rotation_angle, cfg)?;
    let (ao, wo) = ray_coefficients(params, z, rep.rotation_angle);
    let outer = ray_segment(params, ao, wo, rho, f64::INFINITY, cfg)?
        .scale(ray_prefactor(params, rep.rotation_angle));
    let back = ray_prefactor(params, rep.inner_angle).inv();
    Ok(inner + (arc + outer).scale(back))
}

/// `i gamma sum i^n (-i z)^m / (n! m!)` over resonant pairs.
pub fn resonance_correction(params: &Params, z: Complex64, gamma: f64) -> Complex64 {
    params
        .all_resonances()
        .iter()
        .map(|p| I.powu(p.n) * (-I * z).powu(p.m) / (factorial(p.n) * factorial(p.m)))
        .sum::<Complex64>()
        * I
        * gamma
}

/// Assemble `F(z)` from one representation.
pub fn evaluate_with(
    params: &Params,
    z: Complex64,
    rep: &Representation,
    cfg: &QuadConfig,
) -> Result<QuadResult, EvalError> {
    let unit = fp_unit_integral(params, z, rep, cfg)?;
    let tail = tail_integral(params, z, rep, cfg)?;
    let res = resonance_correction(params, z, rep.inner_angle);
    let out = (unit + tail).scale(ray_prefactor(params, rep.inner_angle)) + QuadResult::exact(res);
    // roundoff from a large envelope swamping a small value
    if out.abs_err > 1e-4 * out.value.norm() && out.abs_err > 1e3 * cfg.abs_tol {
        return Err(EvalError::NonConvergence {
            piece: "sum of pieces",
            abs_err: out.abs_err,
            target: cfg.target(out.value),
        });
    }
    Ok(out)
}

/// Rough panel count of a pure ray: decay length from `Re w`, oscillation from `t^alpha`.
fn pure_ray_cost(params: &Params, z: Complex64, rep: &Representation) -> f64 {
    let (a, w) = ray_coefficients(params, z, rep.inner_angle);
    if a.re < -1e-3 {
        return 0.0;
    }
    if w.re >= 0.0 {
        return f64::INFINITY;
    }
    let t = (TAIL_DROP + 10.0 + params.beta().re.abs()) / -w.re;
    (t.powf(params.alpha()) + w.norm() * t) / RADIANS_PER_PANEL
}

/// Representations whose path integral converges at `z`, with their log envelopes.
pub fn applicable_representations(params: &Params, z: Complex64) -> Vec<(Representation, f64)> {
    let mut reps = vec![
        Representation::rotate_half(params),
        Representation::rotate_full(params),
        Representation::split_radius(params, z),
        Representation::split_radius_lower(params, z),
    ];
    reps.extend(Representation::rotate_saddle(params, z));
    // paths needing far too many panels are dropped
    reps.retain(|r| {
        if r.is_split() {
            r.split_rho.powf(params.alpha()) + z.norm() * r.split_rho < 4.0 * MAX_KNOTS as f64
        } else {
            pure_ray_cost(params, z, r) < MAX_KNOTS as f64 / 4.0
        }
    });
    reps.into_iter()
        .filter_map(|r| ln_envelope(params, z, &r).map(|e| (r, e)))
        .collect()
}

/// Pick the representation with the smallest envelope, preferring `RotateHalf` on near ties.
pub fn choose_representation(params: &Params, z: Complex64) -> (Representation, f64) {
    let cands = applicable_representations(params, z);
    let half = cands
        .iter()
        .find(|(r, _)| r.tag == RepresentationTag::RotateHalf)
        .copied()
        .expect("rotate_half always converges");
    let best = cands
        .iter()
        .copied()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap_or(half);
    if half.1 <= best.1 + 2.0 {
        half
    } else {
        best
    }
}

pub fn evaluate_cfg(params: &Params, z: Complex64, cfg: &QuadConfig) -> Result<QuadResult, EvalError> {
    let (rep, _) = choose_representation(params, z);
    evaluate_with(params, z, &rep, cfg)
}

/// `F(z)` with the default tolerances (absolute 1e-12, relative 1e-10).
pub fn evaluate(params: &Params, z: Complex64) -> Result<QuadResult, EvalError> {
    evaluate_cfg(params, z, &QuadConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tight() -> QuadConfig {
        QuadConfig::default().with_abs_tol(1e-14)
    }

    #[test]
    fn exp_remainder_matches_definition() {
        for &x in &[c(0.3, -0.2), c(-4.0, 1.0), c(7.0, 3.0), c(0.0, 6.3), c(-30.0, 0.0)] {
            for m in 0..4i64 {
                let mut partial = c(0.0, 0.0);
                let mut term = c(1.0, 0.0);
                for k in 0..=m as usize {
                    if k > 0 {
                        term *= x / k as f64;
                    }
                    partial += term;
                }
                let direct = x.exp() - partial;
                let got = exp_remainder(x, m);
                assert!((got - direct).norm() <= 1e-13 * (1.0 + direct.norm()) * x.norm().exp());
            }
        }
        // small argument: exact series leading term
        let r = exp_remainder(c(1e-5, 0.0), 1);
        assert!((r.re / (0.5e-10 + 1e-15 / 6.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_anchor() {
        let p = Params::real(2.0, 0.0).unwrap();
        let v = evaluate_cfg(&p, c(0.0, 0.0), &tight()).unwrap();
        let expect = Complex64::from_polar(PI.sqrt() / 2.0, PI / 4.0);
        assert!((v.value - expect).norm() < 1e-12, "{}", v.value);
        assert!((expect.re - 0.626_657_068_7).abs() < 1e-10);
    }

    #[test]
    fn tail_of_gaussian() {
        let p = Params::real(2.0, 0.0).unwrap();
        let rep = Representation::rotate_half(&p);
        let t = tail_integral(&p, c(0.0, 0.0), &rep, &tight()).unwrap();
        // sqrt(pi)/2 erfc(1)
        assert!((t.value - c(0.139_402_792_640_602_4, 0.0)).norm() < 1e-12, "{}", t.value);
        let p3 = Params::real(3.0, 0.0).unwrap();
        let t3 = tail_integral(&p3, c(0.0, 0.0), &Representation::rotate_half(&p3), &tight()).unwrap();
        assert!(t3.value.re > 0.0 && t3.value.re < (-1.0f64).exp());
    }

    #[test]
    fn unit_interval_without_and_with_subtraction() {
        let p = Params::real(2.0, 0.0).unwrap();
        let rep = Representation::rotate_half(&p);
        let u = fp_unit_integral(&p, c(0.0, 0.0), &rep, &tight()).unwrap();
        // int_0^1 e^{-t^2} dt = sqrt(pi)/2 erf(1)
        assert!((u.value - c(0.746_824_132_812_427_0, 0.0)).norm() < 1e-12);
        let p = Params::real(2.0, -1.0).unwrap();
        let u = fp_unit_integral(&p, c(0.0, 0.0), &rep, &tight()).unwrap();
        // int_0^1 (e^{-t^2} - 1)/t dt = -(gamma + E1(1))/2 ... checked against a direct quadrature
        let f = |t: f64| c(((-t * t).exp() - 1.0) / t, 0.0);
        let knots: Vec<f64> = (0..=40).map(|k| k as f64 / 40.0).collect();
        let direct = integrate(f, &knots, &tight()).result.value;
        assert!((u.value - direct).norm() < 1e-12);
    }

    #[test]
    fn representations_agree_at_moderate_points() {
        for &(alpha, beta, z) in &[
            (2.0, c(0.0, 0.0), c(1.0, -1.0)),
            (2.0, c(-2.5, 0.0), c(-0.7, 0.4)),
            (3.0, c(0.5, 0.3), c(0.5, 0.5)),
            (1.5, c(-1.0, 0.0), c(-1.0, -0.5)),
            (2.5, c(-3.2, 0.7), c(0.2, -1.5)),
        ] {
            let p = Params::new(alpha, beta).unwrap();
            let cands = applicable_representations(&p, z);
            let base = evaluate_with(&p, z, &cands[0].0, &tight()).unwrap();
            for (rep, env) in cands.iter().skip(1) {
                if *env > 30.0 {
                    continue;
                }
                let other = evaluate_with(&p, z, rep, &tight()).unwrap();
                let tol = 10.0 * (base.abs_err + other.abs_err) + 1e-12;
                assert!(
                    (base.value - other.value).norm() < tol,
                    "{alpha} {beta} {z} {:?}: {} vs {}",
                    rep.tag,
                    base.value,
                    other.value
                );
            }
        }
    }

    #[test]
    fn overflow_guard_trips() {
        let p = Params::real(2.0, 0.0).unwrap();
        let z = Complex64::from_polar(80.0, PI / 4.0);
        assert!(matches!(evaluate(&p, z), Err(EvalError::Overflow { .. })));
        assert!(z_max(2.0) > 40.0 && z_max(2.0) < 60.0);
    }
}
