//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] of order `N` carries the coefficients of
//! `x^0, ..., x^N`. Binary operations truncate to the smaller order; nothing
//! here ever invents coefficients beyond what its inputs determine.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Moduli below this count as zero when locating the leading term for a square root.
pub const LEADING_ZERO_TOL: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("division by a series with vanishing constant term")]
    ZeroDivisor,
    #[error("square root of a series with a zero of odd order {0} at the origin")]
    OddOrderZero(usize),
    #[error("series is identically zero to its truncation order")]
    AllZero,
    #[error("composition requires the inner series to vanish at the origin")]
    InnerNotZeroAtOrigin,
    #[error("reversion requires a(0) = 0 and a'(0) != 0")]
    NotInvertible,
    #[error("truncation order too small: need {needed}, have {have}")]
    OrderTooSmall { needed: usize, have: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Principal square root of the leading coefficient.
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x` truncated at `order >= 1`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// `exp(x)` to the given order.
    pub fn exp_series(order: usize) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let mut term = 1.0;
        for j in 0..=order {
            if j > 0 {
                term /= j as f64;
            }
            c.push(Complex64::new(term, 0.0));
        }
        Self::new(c)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|j| self.coeffs[j] + other.coeffs[j]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|j| self.coeffs[j] - other.coeffs[j]).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        let b0 = other.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(SeriesError::ZeroDivisor);
        }
        let n = self.order().min(other.order());
        let mut q = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Ok(Self::new(q))
    }

    /// Index of the first coefficient with modulus above [`LEADING_ZERO_TOL`].
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm() > LEADING_ZERO_TOL)
    }

    /// Square root. A zero of order `2k` at the origin is factored out, so the
    /// result has order `N - k`.
    pub fn sqrt(&self, branch: Branch) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::AllZero)?;
        if v % 2 == 1 {
            return Err(SeriesError::OddOrderZero(v));
        }
        let k = v / 2;
        let inner = &self.coeffs[v..];
        let mut root0 = inner[0].sqrt();
        if branch == Branch::Minus {
            root0 = -root0;
        }
        let m = inner.len() - 1;
        let mut b = vec![Complex64::new(0.0, 0.0); m + 1];
        b[0] = root0;
        for n in 1..=m {
            let mut acc = inner[n];
            for j in 1..n {
                acc -= b[j] * b[n - j];
            }
            b[n] = acc / (2.0 * root0);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); k];
        out.extend(b);
        Ok(Self::new(out))
    }

    /// `self^p` for a series with nonzero constant term, principal branch at the origin.
    pub fn pow(&self, p: Complex64) -> Result<Self, SeriesError> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(SeriesError::ZeroDivisor);
        }
        let n = self.order();
        let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
        b[0] = a0.powc(p);
        // a * b' = p * a' * b, solved term by term
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += (p * j as f64 - (k - j) as f64) * self.coeffs[j] * b[k - j];
            }
            b[k] = acc / (k as f64 * a0);
        }
        Ok(Self::new(b))
    }

    /// `outer(inner(x))`; requires `inner(0) == 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if inner.coeffs[0].norm() != 0.0 {
            return Err(SeriesError::InnerNotZeroAtOrigin);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n], n);
        for j in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[j];
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[x^n] a^{-1} = (1/n) [w^{n-1}] (w / a(w))^n`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].norm() != 0.0 || self.order() < 1 || self.coeffs[1].norm() == 0.0 {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        // a(w)/w as a series of order n-1
        let shifted = Self::new(self.coeffs[1..].to_vec());
        let phi = Self::constant(Complex64::new(1.0, 0.0), n - 1).div(&shifted)?;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        let mut power = phi.clone();
        for k in 1..=n {
            out[k] = power.coeffs[k - 1] / k as f64;
            if k < n {
                power = power.mul(&phi);
            }
        }
        Ok(Self::new(out))
    }

    /// Term-by-term derivative, order `N - 1` (order 0 stays a zero constant).
    pub fn derive(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|j| (self.coeffs[j] - other.coeffs[j]).norm())
            .fold(0.0, f64::max)
    }
}

/// Binary ring operations selectable at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Div,
}

pub fn ts_arith(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    op: ArithOp,
) -> Result<TruncatedSeries, SeriesError> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(c: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(c)
    }

    fn assert_real_coeffs(s: &TruncatedSeries, expect: &[f64], tol: f64) {
        assert_eq!(s.order() + 1, expect.len(), "order mismatch: {s:?}");
        for (j, (&got, &want)) in s.coeffs().iter().zip(expect).enumerate() {
            assert!((got - want).norm() <= tol, "coeff {j}: {got} vs {want}");
        }
    }

    #[test]
    fn products_and_quotients() {
        assert_real_coeffs(&r(&[1.0, 1.0, 0.0]).mul(&r(&[1.0, -1.0, 0.0])), &[1.0, 0.0, -1.0], 0.0);
        let geo = r(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
            .div(&r(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0]))
            .unwrap();
        assert_real_coeffs(&geo, &[1.0; 6], 1e-15);
        let p = r(&[1.0, 2.0, 0.0]).mul(&r(&[3.0, 1.0, 0.0]));
        assert_real_coeffs(&p, &[3.0, 7.0, 2.0], 1e-15);
        // sampled check of the same product
        let x = Complex64::new(0.1, 0.0);
        assert!((p.eval(x) - (1.0 + 0.2) * (3.0 + 0.1)).norm() < 1e-14);
        assert_eq!(r(&[1.0, 2.0]).div(&r(&[0.0, 1.0])), Err(SeriesError::ZeroDivisor));
    }

    #[test]
    fn orders_truncate_to_minimum() {
        let a = r(&[1.0, 1.0, 1.0, 1.0]);
        let b = r(&[1.0, 1.0]);
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.add(&b).order(), 1);
        assert_eq!(ts_arith(&a, &b, ArithOp::Div).unwrap().order(), 1);
    }

    #[test]
    fn square_roots() {
        let n = 8;
        let mut c = vec![0.0; n + 1];
        c[0] = 1.0;
        c[1] = 2.0;
        let a = r(&c);
        let s = a.sqrt(Branch::Plus).unwrap();
        // oracle: squaring returns the input
        assert!(s.mul(&s).max_abs_diff(&a) < 1e-14);
        assert!((s.coeff(2) + 0.5).norm() < 1e-15);
        assert!((s.coeff(3) - 0.5).norm() < 1e-15);

        let s = r(&[0.0, 0.0, 1.0, 0.0, 0.0]).sqrt(Branch::Plus).unwrap();
        assert_real_coeffs(&s, &[0.0, 1.0, 0.0, 0.0], 1e-15);

        let s = r(&[1.0]).sqrt(Branch::Minus).unwrap();
        assert_real_coeffs(&s, &[-1.0], 0.0);

        assert_eq!(r(&[0.0, 1.0, 1.0]).sqrt(Branch::Plus), Err(SeriesError::OddOrderZero(1)));
    }

    #[test]
    fn composition() {
        let sq = r(&[0.0, 0.0, 1.0, 0.0, 0.0]);
        let inner = r(&[0.0, 1.0, 1.0, 0.0, 0.0]);
        assert_real_coeffs(&sq.compose(&inner).unwrap(), &[0.0, 0.0, 1.0, 2.0, 1.0], 1e-15);
        let e = TruncatedSeries::exp_series(6);
        assert_real_coeffs(&e.compose(&TruncatedSeries::zero(6)).unwrap(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.0);
        assert_eq!(
            e.compose(&TruncatedSeries::exp_series(6)),
            Err(SeriesError::InnerNotZeroAtOrigin)
        );
    }

    #[test]
    fn reversion() {
        let id = TruncatedSeries::identity(6);
        assert!(id.revert().unwrap().max_abs_diff(&id) < 1e-15);
        let a = r(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        let inv = a.revert().unwrap();
        assert_real_coeffs(&inv, &[0.0, 1.0, -1.0, 2.0, -5.0, 14.0], 1e-12);
        // brute force: compose back
        assert!(a.compose(&inv).unwrap().max_abs_diff(&TruncatedSeries::identity(5)) < 1e-13);
        let inv = r(&[0.0, 2.0, 0.0]).revert().unwrap();
        assert_real_coeffs(&inv, &[0.0, 0.5, 0.0], 1e-15);
        assert_eq!(r(&[1.0, 1.0]).revert(), Err(SeriesError::NotInvertible));
        assert_eq!(r(&[0.0, 0.0, 1.0]).revert(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn derivatives() {
        assert_real_coeffs(&r(&[1.0, 1.0, 1.0]).derive(), &[1.0, 2.0], 0.0);
        assert_real_coeffs(&r(&[3.0]).derive(), &[0.0], 0.0);
        // inverse function rule
        let a = r(&[0.0, 1.5, -0.3, 0.7, 0.2, -0.1, 0.05, 0.0]);
        let inv = a.revert().unwrap();
        let lhs = inv.derive().mul(&a.derive().compose(&inv).unwrap());
        let one = TruncatedSeries::constant(Complex64::new(1.0, 0.0), lhs.order());
        assert!(lhs.max_abs_diff(&one) < 1e-12);
    }

    #[test]
    fn powers_match_repeated_products() {
        let a = TruncatedSeries::new(vec![
            Complex64::new(2.0, 0.5),
            Complex64::new(-0.3, 0.1),
            Complex64::new(0.7, 0.0),
            Complex64::new(0.0, 0.2),
            Complex64::new(0.1, -0.1),
        ]);
        let cube = a.pow(Complex64::new(3.0, 0.0)).unwrap();
        assert!(cube.max_abs_diff(&a.mul(&a).mul(&a)) < 1e-12);
        let half = a.pow(Complex64::new(0.5, 0.0)).unwrap();
        assert!(half.max_abs_diff(&a.sqrt(Branch::Plus).unwrap()) < 1e-13);
    }
}
