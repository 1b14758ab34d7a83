//! Asymptotic expansions of `F(R e^{i theta})` as `R -> inf` on every ray.
//!
//! An [`Expansion`] is structured data:
//!
//! ```text
//! F ~ sum_n c_n R^{-s_n} + exp(g R^p) phase R^q sum_n d_n R^{-n p} - sum_k l_k R^{m_k} (ln R + shift)
//! ```
//!
//! with `s_n = beta + n alpha + 1` and `p = alpha/(alpha-1)`. The
//! exponential factor is kept as its logarithm until the final step.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{angle_window_top, Params};
use crate::gamma::{gamma_half_integer, gamma_star};
use crate::saddle::{default_order, saddle_brackets, SaddleData, SaddleError};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Angles closer than this to a boundary ray carry the `near_boundary` flag.
pub const BOUNDARY_WARNING: f64 = 1e-3;

/// Log-magnitudes above this are not materialized.
pub const LN_MATERIALIZE_LIMIT: f64 = 700.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticError {
    #[error("theta = {theta} is outside the open sector ({lo}, {hi})")]
    ThetaOutsideSector { theta: f64, lo: f64, hi: f64 },
    #[error("requested {requested} terms but the expansion holds {available}")]
    TooFewTerms { requested: usize, available: usize },
    #[error("expansion value overflows: ln|F| = {ln_abs:.2}, arg = {arg:.6}")]
    Overflow { ln_abs: f64, arg: f64 },
    #[error(transparent)]
    Saddle(#[from] SaddleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Sector1,
    Sector2,
    RayPosReal,
    RayLower,
}

/// `coefficient R^{power_m} (ln R + shift)`, subtracted from the sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogTerm {
    pub coefficient: Complex64,
    pub power_m: u32,
    pub shift: Complex64,
}

/// `c R^{-exponent}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicTerm {
    pub c: Complex64,
    pub exponent: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpPart {
    pub growth_coeff: Complex64,
    pub growth_power: f64,
    pub power_exponent: Complex64,
    pub phase_const: Complex64,
    pub d_terms: Vec<Complex64>,
}

impl ExpPart {
    /// `ln(phase R^q exp(g R^p))` as a complex number.
    pub fn ln_prefactor(&self, r: f64) -> Complex64 {
        self.growth_coeff * r.powf(self.growth_power)
            + self.power_exponent * r.ln()
            + self.phase_const.ln()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub case_tag: CaseTag,
    pub theta: f64,
    pub near_boundary: bool,
    /// Holds one term beyond the requested count, for the truncation estimate.
    pub algebraic_terms: Vec<AlgebraicTerm>,
    pub log_terms: Vec<LogTerm>,
    pub exp_part: Option<ExpPart>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionSum {
    pub value: Complex64,
    pub next_term_magnitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScaledSum {
    pub ln_abs: f64,
    pub arg: f64,
    pub ln_next_term: f64,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Endpoint series at angle `theta`, continued analytically in `theta`.
fn endpoint_terms(params: &Params, theta: f64, n_terms: usize) -> (Vec<AlgebraicTerm>, Vec<LogTerm>) {
    let beta = params.beta();
    let alpha = params.alpha();
    let rot = theta + PI / 2.0;
    let algebraic = (0..=n_terms as u32)
        .map(|n| {
            let s = beta + n as f64 * alpha + 1.0;
            let phase = (I * (n as f64 * PI / 2.0 - rot * s)).exp();
            AlgebraicTerm {
                c: phase * gamma_star(s) / factorial(n),
                exponent: s,
            }
        })
        .collect();
    let logs = params
        .all_resonances()
        .iter()
        .map(|p| LogTerm {
            coefficient: I.powu(p.n) * (I * (theta - PI / 2.0) * p.m as f64).exp()
                / (factorial(p.n) * factorial(p.m)),
            power_m: p.m,
            shift: I * rot,
        })
        .collect();
    (algebraic, logs)
}

/// `alpha^{-kappa} (1 - 1/alpha)`.
fn saddle_height(params: &Params) -> f64 {
    let a = params.alpha();
    a.powf(-params.kappa()) * (1.0 - 1.0 / a)
}

fn power_exponent(params: &Params) -> Complex64 {
    (params.beta() + 1.0 - params.alpha() / 2.0) * params.kappa()
}

fn check_sector(theta: f64, lo: f64, hi: f64) -> Result<(), AsymptoticError> {
    if theta > lo && theta < hi {
        Ok(())
    } else {
        Err(AsymptoticError::ThetaOutsideSector { theta, lo, hi })
    }
}

/// Sector 1, `-pi - pi/alpha < theta < 0`: algebraic decay.
pub fn case1_terms(params: &Params, theta: f64, n_terms: usize) -> Result<Expansion, AsymptoticError> {
    let lo = -PI - PI / params.alpha();
    check_sector(theta, lo, 0.0)?;
    let (algebraic_terms, log_terms) = endpoint_terms(params, theta, n_terms);
    Ok(Expansion {
        case_tag: CaseTag::Sector1,
        theta,
        near_boundary: theta - lo < BOUNDARY_WARNING || -theta < BOUNDARY_WARNING,
        algebraic_terms,
        log_terms,
        exp_part: None,
    })
}

/// Sector 2, `0 < theta < pi - pi/alpha`: exponential growth from the saddle.
pub fn case2_terms(params: &Params, theta: f64, n_terms: usize) -> Result<Expansion, AsymptoticError> {
    let alpha = params.alpha();
    let hi = angle_window_top(alpha);
    check_sector(theta, 0.0, hi)?;
    let sd = SaddleData::sector(alpha, theta, default_order(n_terms));
    let brackets = saddle_brackets(&sd, params.beta(), n_terms + 1)?;
    let d_terms = brackets
        .iter()
        .enumerate()
        .map(|(n, b)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            b * sign * gamma_half_integer(n as u32) / factorial(2 * n as u32)
        })
        .collect();
    let eta2 = alpha * theta / (alpha - 1.0) - PI / 2.0;
    let (algebraic_terms, log_terms) = endpoint_terms(params, theta, n_terms);
    Ok(Expansion {
        case_tag: CaseTag::Sector2,
        theta,
        near_boundary: theta < BOUNDARY_WARNING || hi - theta < BOUNDARY_WARNING,
        algebraic_terms,
        log_terms,
        exp_part: Some(ExpPart {
            growth_coeff: Complex64::from_polar(saddle_height(params), eta2),
            growth_power: alpha / (alpha - 1.0),
            power_exponent: power_exponent(params),
            phase_const: (I * ((params.beta() + 1.0) * PI / (2.0 * alpha) + PI / 2.0)).exp(),
            d_terms,
        }),
    })
}

/// Boundary-ray oscillatory part from the real stationary point, with `d_n = e^{i sign pi (2n+1)/4} ...`.
fn stationary_part(
    params: &Params,
    n_terms: usize,
    sign: f64,
    phase_const: Complex64,
) -> Result<ExpPart, AsymptoticError> {
    let alpha = params.alpha();
    let sd = SaddleData::real_axis(alpha, default_order(n_terms));
    let brackets = saddle_brackets(&sd, params.beta(), n_terms + 1)?;
    let d_terms = brackets
        .iter()
        .enumerate()
        .map(|(n, b)| {
            let rot = Complex64::from_polar(1.0, sign * PI * (2 * n + 1) as f64 / 4.0);
            b * rot * gamma_half_integer(n as u32) / factorial(2 * n as u32)
        })
        .collect();
    Ok(ExpPart {
        growth_coeff: Complex64::new(0.0, -sign * saddle_height(params)),
        growth_power: alpha / (alpha - 1.0),
        power_exponent: power_exponent(params),
        phase_const,
        d_terms,
    })
}

/// The positive real axis `theta = 0`.
pub fn real_axis_terms(params: &Params, n_terms: usize) -> Result<Expansion, AsymptoticError> {
    let (algebraic_terms, log_terms) = endpoint_terms(params, 0.0, n_terms);
    Ok(Expansion {
        case_tag: CaseTag::RayPosReal,
        theta: 0.0,
        near_boundary: false,
        algebraic_terms,
        log_terms,
        exp_part: Some(stationary_part(params, n_terms, 1.0, Complex64::new(1.0, 0.0))?),
    })
}

/// The lower boundary ray `theta = -pi - pi/alpha`.
pub fn lower_ray_terms(params: &Params, n_terms: usize) -> Result<Expansion, AsymptoticError> {
    let alpha = params.alpha();
    let theta = -PI - PI / alpha;
    let (algebraic_terms, log_terms) = endpoint_terms(params, theta, n_terms);
    let phase_const = (I * PI * (params.beta() + 1.0) / alpha).exp();
    Ok(Expansion {
        case_tag: CaseTag::RayLower,
        theta,
        near_boundary: false,
        algebraic_terms,
        log_terms,
        exp_part: Some(stationary_part(params, n_terms, -1.0, phase_const)?),
    })
}

/// Dispatch on the canonical angle; the top of the window is the lower ray.
pub fn expansion_on_ray(params: &Params, theta: f64, n_terms: usize) -> Result<Expansion, AsymptoticError> {
    let theta = crate::domain::canonical_angle(theta, params.alpha());
    let top = angle_window_top(params.alpha());
    if theta.abs() <= 1e-14 {
        real_axis_terms(params, n_terms)
    } else if (theta - top).abs() <= 1e-14 {
        lower_ray_terms(params, n_terms)
    } else if theta > 0.0 {
        case2_terms(params, theta, n_terms)
    } else {
        case1_terms(params, theta, n_terms)
    }
}

/// `e^{i eta1} sqrt(2 pi/(alpha-1)) alpha^{(-1/2-beta)/(alpha-1)}`, the sector-2 leading constant.
pub fn case2_leading_constant(params: &Params, theta: f64) -> Complex64 {
    let alpha = params.alpha();
    let kappa = params.kappa();
    let beta = params.beta();
    let eta1 = PI / 4.0 + kappa * (beta + 1.0 - alpha / 2.0) * theta;
    let scale = ((-0.5 - beta) * kappa * alpha.ln()).exp();
    (I * eta1).exp() * scale * (2.0 * PI / (alpha - 1.0)).sqrt()
}

struct Parts {
    /// algebraic and log parts, materialized
    plain: Complex64,
    /// ln of the exponential prefactor, if any
    ln_pre: Option<Complex64>,
    exp_sum: Complex64,
    ln_next: f64,
}

fn parts(e: &Expansion, r: f64, n_terms: usize) -> Result<Parts, AsymptoticError> {
    let available = e.algebraic_terms.len();
    if n_terms > available {
        return Err(AsymptoticError::TooFewTerms {
            requested: n_terms,
            available,
        });
    }
    let lr = r.ln();
    let term = |t: &AlgebraicTerm| t.c * (-t.exponent * lr).exp();
    let mut plain: Complex64 = e.algebraic_terms[..n_terms].iter().map(term).sum();
    for l in &e.log_terms {
        plain -= l.coefficient * r.powi(l.power_m as i32) * (lr + l.shift);
    }
    let mut ln_next = e
        .algebraic_terms
        .get(n_terms)
        .map_or(f64::NEG_INFINITY, |t| term(t).norm().ln());
    let (ln_pre, exp_sum) = match &e.exp_part {
        Some(x) => {
            let pre = x.ln_prefactor(r);
            let step = r.powf(-x.growth_power);
            let sum: Complex64 = x.d_terms[..n_terms.min(x.d_terms.len())]
                .iter()
                .enumerate()
                .map(|(n, d)| d * step.powi(n as i32))
                .sum();
            if let Some(d) = x.d_terms.get(n_terms) {
                ln_next = ln_next.max(pre.re + d.norm().ln() + n_terms as f64 * step.ln());
            }
            (Some(pre), sum)
        }
        None => (None, Complex64::new(0.0, 0.0)),
    };
    Ok(Parts {
        plain,
        ln_pre,
        exp_sum,
        ln_next,
    })
}

/// Sum of the first `n_terms` algebraic and exponential terms plus all log terms.
pub fn evaluate_expansion(e: &Expansion, r: f64, n_terms: usize) -> Result<ExpansionSum, AsymptoticError> {
    let p = parts(e, r, n_terms)?;
    let value = match p.ln_pre {
        Some(pre) if p.exp_sum.norm() > 0.0 => {
            let ln_exp = pre.re + p.exp_sum.norm().ln();
            if ln_exp > LN_MATERIALIZE_LIMIT {
                let l = evaluate_expansion_log(e, r, n_terms)?;
                return Err(AsymptoticError::Overflow {
                    ln_abs: l.ln_abs,
                    arg: l.arg,
                });
            }
            p.plain + pre.exp() * p.exp_sum
        }
        _ => p.plain,
    };
    Ok(ExpansionSum {
        value,
        next_term_magnitude: p.ln_next.exp(),
    })
}

/// [`evaluate_expansion`] returned as `(ln|F|, arg F)`, safe for any growth.
pub fn evaluate_expansion_log(e: &Expansion, r: f64, n_terms: usize) -> Result<LogScaledSum, AsymptoticError> {
    let p = parts(e, r, n_terms)?;
    let ln_value = match p.ln_pre {
        Some(pre) if p.exp_sum.norm() > 0.0 => {
            let big = pre + p.exp_sum.ln();
            if p.plain.norm() == 0.0 {
                big
            } else {
                let small = p.plain.ln();
                // ln(e^big + e^small) without overflow
                if big.re >= small.re {
                    big + (Complex64::new(1.0, 0.0) + (small - big).exp()).ln()
                } else {
                    small + (Complex64::new(1.0, 0.0) + (big - small).exp()).ln()
                }
            }
        }
        _ => p.plain.ln(),
    };
    Ok(LogScaledSum {
        ln_abs: ln_value.re,
        arg: Complex64::from_polar(1.0, ln_value.im).arg(),
        ln_next_term: p.ln_next,
    })
}
