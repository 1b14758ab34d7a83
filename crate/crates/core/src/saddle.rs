//! Saddle-point data and the steepest-descent bracket coefficients.
//!
//! In the scaled variable `u` the phase is `h(u) = e^{i phi} u - u^alpha`
//! (sector 2) or `h(s) = s - s^alpha` (boundary rays). Both have the form
//! `h(u) - h(u0) = -sum_{j>=2} binom(alpha, j) u0^{alpha-j} (u - u0)^j`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{ts_arith, ArithOp, Branch, SeriesError, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SaddleError {
    #[error("neither square-root branch satisfies the branch rule")]
    BranchAmbiguity,
    #[error("h series has order {have}, bracket {n} needs at least {needed}")]
    OrderTooSmall { n: usize, needed: usize, have: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchRule {
    /// `Im psi` increases along the path whose direction at the saddle is `direction`.
    ImIncreasing { direction: Complex64 },
    /// `psi = sqrt(h(s0) - h(s))` with a positive real linear coefficient.
    SgnConvention,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaddleData {
    pub phi: f64,
    pub zeta0: Complex64,
    /// `h - h(zeta0)` in powers of `zeta - zeta0`.
    pub h_series: TruncatedSeries,
    pub branch_rule: BranchRule,
}

/// Generalized binomial coefficient.
pub fn binom(alpha: f64, j: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..j {
        b *= (alpha - i as f64) / (i + 1) as f64;
    }
    b
}

/// `-sum_{j>=2} binom(alpha, j) center^{alpha-j} v^j` up to `order`.
fn power_phase_series(alpha: f64, center: Complex64, order: usize) -> TruncatedSeries {
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    for (j, cj) in c.iter_mut().enumerate().skip(2) {
        *cj = -binom(alpha, j) * center.powc(Complex64::new(alpha - j as f64, 0.0));
    }
    TruncatedSeries::new(c)
}

/// Default series order for brackets up to `n_max`.
pub fn default_order(n_max: usize) -> usize {
    2 * n_max + 8
}

impl SaddleData {
    /// Sector-2 saddle of `e^{i phi} u - u^alpha` at `u0 = alpha^{-kappa} e^{i kappa phi}`.
    pub fn sector(alpha: f64, theta: f64, order: usize) -> Self {
        let kappa = 1.0 / (alpha - 1.0);
        let phi = theta - PI / 2.0 + PI / (2.0 * alpha);
        let zeta0 = Complex64::from_polar(alpha.powf(-kappa), kappa * phi);
        Self {
            phi,
            zeta0,
            h_series: power_phase_series(alpha, zeta0, order),
            branch_rule: BranchRule::ImIncreasing {
                direction: Complex64::from_polar(1.0, kappa * phi),
            },
        }
    }

    /// Real stationary point `s0 = alpha^{-kappa}` of `s - s^alpha`.
    pub fn real_axis(alpha: f64, order: usize) -> Self {
        let kappa = 1.0 / (alpha - 1.0);
        let s0 = Complex64::new(alpha.powf(-kappa), 0.0);
        Self {
            phi: 0.0,
            zeta0: s0,
            h_series: power_phase_series(alpha, s0, order),
            branch_rule: BranchRule::SgnConvention,
        }
    }

    /// Branch-resolved `psi` in powers of `zeta - zeta0`.
    pub fn psi(&self) -> Result<TruncatedSeries, SaddleError> {
        let radicand = match self.branch_rule {
            BranchRule::ImIncreasing { .. } => self.h_series.clone(),
            BranchRule::SgnConvention => self.h_series.scale(Complex64::new(-1.0, 0.0)),
        };
        for branch in [Branch::Plus, Branch::Minus] {
            let psi = radicand.sqrt(branch)?;
            let p1 = psi.coeff(1);
            let ok = match self.branch_rule {
                BranchRule::ImIncreasing { direction } => (p1 * direction).im > 1e-13 * p1.norm(),
                BranchRule::SgnConvention => p1.re > 0.0 && p1.im.abs() <= 1e-12 * p1.norm(),
            };
            if ok {
                return Ok(psi);
            }
        }
        Err(SaddleError::BranchAmbiguity)
    }
}

/// `<delta^{(2n)}(psi), zeta^beta>`, i.e. `(2n)! [w^{2n}] f(psi^{-1}(w)) / psi'(psi^{-1}(w))`.
pub fn saddle_bracket(sd: &SaddleData, beta: Complex64, n: usize) -> Result<Complex64, SaddleError> {
    Ok(saddle_brackets(sd, beta, n + 1)?[n])
}

/// Brackets `0..n_terms` from a single series pipeline.
pub fn saddle_brackets(
    sd: &SaddleData,
    beta: Complex64,
    n_terms: usize,
) -> Result<Vec<Complex64>, SaddleError> {
    if n_terms == 0 {
        return Ok(Vec::new());
    }
    let n = n_terms - 1;
    let have = sd.h_series.order();
    if have < 2 * n + 4 {
        return Err(SaddleError::OrderTooSmall {
            n,
            needed: 2 * n + 4,
            have,
        });
    }
    let psi = sd.psi()?;
    let inverse = psi.revert()?;
    let mut base = vec![Complex64::new(0.0, 0.0); psi.order() + 1];
    base[0] = sd.zeta0;
    if base.len() > 1 {
        base[1] = Complex64::new(1.0, 0.0);
    }
    let f = TruncatedSeries::new(base).pow(beta)?;
    let q = ts_arith(&f, &psi.derive(), ArithOp::Div)?;
    let g = q.compose(&inverse)?;
    let mut out = Vec::with_capacity(n_terms);
    let mut fact = 1.0;
    for k in 0..n_terms {
        if k > 0 {
            fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        }
        out.push(g.coeff(2 * k) * fact);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saddle_condition_holds() {
        for &(alpha, theta) in &[(2.0, 0.3), (1.4, 0.1), (3.5, 1.7), (5.0, 0.01)] {
            let sd = SaddleData::sector(alpha, theta, 12);
            // linear term of e^{i phi} u - u^alpha vanishes at u0
            let lin = Complex64::from_polar(1.0, sd.phi)
                - alpha * sd.zeta0.powc(Complex64::new(alpha - 1.0, 0.0));
            assert!(lin.norm() < 1e-13);
            assert!(sd.h_series.coeff(0).norm() == 0.0 && sd.h_series.coeff(1).norm() == 0.0);
        }
    }

    #[test]
    fn gaussian_real_axis_bracket_is_one() {
        let sd = SaddleData::real_axis(2.0, 12);
        let b = saddle_brackets(&sd, Complex64::new(0.0, 0.0), 3).unwrap();
        assert!((b[0] - 1.0).norm() < 1e-12);
        // psi = u exactly, so higher brackets vanish
        assert!(b[1].norm() < 1e-12 && b[2].norm() < 1e-12);
    }

    #[test]
    fn leading_bracket_closed_form() {
        for &(alpha, theta, beta) in &[
            (2.0, 0.4, Complex64::new(0.3, -0.2)),
            (3.0, 1.0, Complex64::new(-1.5, 0.0)),
            (1.5, 0.2, Complex64::new(2.0, 1.0)),
        ] {
            let sd = SaddleData::sector(alpha, theta, 10);
            let psi1 = sd.psi().unwrap().coeff(1);
            let expect = sd.zeta0.powc(beta) / psi1;
            let got = saddle_bracket(&sd, beta, 0).unwrap();
            assert!((got - expect).norm() < 1e-12 * expect.norm());
            assert!((psi1 * psi1 + binom(alpha, 2) * sd.zeta0.powf(alpha - 2.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn order_guard() {
        let sd = SaddleData::real_axis(2.5, 6);
        assert!(matches!(
            saddle_bracket(&sd, Complex64::new(0.0, 0.0), 2),
            Err(SaddleError::OrderTooSmall { .. })
        ));
        assert!(saddle_bracket(&sd, Complex64::new(0.0, 0.0), 1).is_ok());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(2.0, 2), 1.0);
        assert_eq!(binom(2.0, 3), 0.0);
        assert!((binom(0.5, 2) + 0.125).abs() < 1e-16);
    }
}
