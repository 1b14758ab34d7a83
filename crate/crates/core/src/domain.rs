//! Parameter pairs, evaluation points and resonance bookkeeping.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for detecting `beta + n*alpha + m + 1 == 0`.
pub const DEFAULT_EPS_RESONANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("alpha must satisfy alpha > 1 (got {0})")]
    AlphaNotAboveOne(f64),
    #[error("beta must be finite (got {0})")]
    NonFiniteBeta(Complex64),
    #[error("resonance tolerance must be positive and finite (got {0})")]
    BadTolerance(f64),
}

/// The pair `(alpha, beta)` defining `f(t) = t^beta exp(i t^alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    alpha: f64,
    beta: Complex64,
    kappa: f64,
    eps_resonance: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: Complex64) -> Result<Self, ParamError> {
        Self::with_tolerance(alpha, beta, DEFAULT_EPS_RESONANCE)
    }

    pub fn real(alpha: f64, beta: f64) -> Result<Self, ParamError> {
        Self::new(alpha, Complex64::new(beta, 0.0))
    }

    pub fn with_tolerance(
        alpha: f64,
        beta: Complex64,
        eps_resonance: f64,
    ) -> Result<Self, ParamError> {
        // NaN fails this comparison as well
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(ParamError::AlphaNotAboveOne(alpha));
        }
        if !beta.re.is_finite() || !beta.im.is_finite() {
            return Err(ParamError::NonFiniteBeta(beta));
        }
        if !(eps_resonance > 0.0) || !eps_resonance.is_finite() {
            return Err(ParamError::BadTolerance(eps_resonance));
        }
        Ok(Self {
            alpha,
            beta,
            kappa: 1.0 / (alpha - 1.0),
            eps_resonance,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `1 / (alpha - 1)`.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn eps_resonance(&self) -> f64 {
        self.eps_resonance
    }

    /// Same alpha, beta shifted by `delta`.
    pub fn shift_beta(&self, delta: Complex64) -> Self {
        Self {
            beta: self.beta + delta,
            ..*self
        }
    }

    /// `beta + n*alpha + m + 1`.
    pub fn exponent(&self, n: u32, m: u32) -> Complex64 {
        self.beta + n as f64 * self.alpha + m as f64 + 1.0
    }

    pub fn is_resonant(&self, n: u32, m: u32) -> bool {
        self.exponent(n, m).norm() < self.eps_resonance
    }

    /// Largest `m` with `m + n*alpha + Re(beta) <= -1`, or `None` when no such `m >= 0` exists.
    pub fn max_subtracted_m(&self, n: u32) -> Option<u32> {
        let room = -1.0 - self.beta.re - n as f64 * self.alpha + self.eps_resonance;
        if room < 0.0 {
            None
        } else {
            Some(room.floor() as u32)
        }
    }

    /// Largest `n` that contributes any subtracted Taylor term.
    pub fn max_subtracted_n(&self) -> Option<u32> {
        let room = -1.0 - self.beta.re + self.eps_resonance;
        if room < 0.0 {
            None
        } else {
            Some((room / self.alpha).floor() as u32)
        }
    }

    /// All pairs `(n, m)` with `m + n*alpha + Re(beta) <= -1`, ordered by `n` then `m`.
    pub fn subtraction_set(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        if let Some(n_max) = self.max_subtracted_n() {
            for n in 0..=n_max {
                if let Some(m_max) = self.max_subtracted_m(n) {
                    out.extend((0..=m_max).map(|m| (n, m)));
                }
            }
        }
        out
    }

    /// Resonant pairs that can actually occur (they always lie inside the subtraction set).
    pub fn all_resonances(&self) -> Vec<ResonancePair> {
        self.subtraction_set()
            .into_iter()
            .filter(|&(n, m)| self.is_resonant(n, m))
            .map(|(n, m)| ResonancePair { n, m })
            .collect()
    }
}

/// A coincidence `beta + n*alpha + m + 1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ResonancePair {
    pub n: u32,
    pub m: u32,
}

/// Resonant pairs inside the box `0..=max_n x 0..=max_m`, sorted lexicographically.
pub fn resonances(params: &Params, max_n: u32, max_m: u32) -> Vec<ResonancePair> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        for m in 0..=max_m {
            if params.is_resonant(n, m) {
                out.push(ResonancePair { n, m });
            }
        }
    }
    out
}

/// Upper end of the angle window `(-pi - pi/alpha, pi - pi/alpha]`.
pub fn angle_window_top(alpha: f64) -> f64 {
    PI - PI / alpha
}

/// Map an angle into `(-pi - pi/alpha, pi - pi/alpha]`.
pub fn canonical_angle(theta: f64, alpha: f64) -> f64 {
    let top = angle_window_top(alpha);
    let k = ((theta - top) / (2.0 * PI)).ceil();
    if k == 0.0 {
        return theta;
    }
    let reduced = theta - 2.0 * PI * k;
    // guard the open lower end against roundoff
    if reduced <= top - 2.0 * PI {
        reduced + 2.0 * PI
    } else {
        reduced
    }
}

/// A point `z = R e^{i theta}` with theta in the canonical window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub z: Complex64,
    pub radius: f64,
    pub angle: f64,
}

impl EvalPoint {
    pub fn new(z: Complex64, alpha: f64) -> Self {
        let radius = z.norm();
        let angle = if radius == 0.0 {
            0.0
        } else {
            canonical_angle(z.arg(), alpha)
        };
        Self { z, radius, angle }
    }

    pub fn from_polar(radius: f64, angle: f64, alpha: f64) -> Self {
        let angle = canonical_angle(angle, alpha);
        Self {
            z: Complex64::from_polar(radius, angle),
            radius,
            angle,
        }
    }

    /// Re-canonicalize; a no-op on values produced by the constructors.
    pub fn canonicalize(&self, alpha: f64) -> Self {
        Self {
            z: self.z,
            radius: self.radius,
            angle: if self.radius == 0.0 {
                0.0
            } else {
                canonical_angle(self.angle, alpha)
            },
        }
    }
}
