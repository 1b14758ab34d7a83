use std::f64::consts::PI;

use fourier_laplace::domain::canonical_angle;
use fourier_laplace::saddle::{saddle_bracket, SaddleData};
use fourier_laplace::series::{Branch, TruncatedSeries};
use fourier_laplace::Complex64;
use proptest::prelude::*;

const ORDER: usize = 8;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(coeff(), ORDER + 1).prop_map(TruncatedSeries::new)
}

/// Series with a simple zero at the origin.
fn invertible() -> impl Strategy<Value = TruncatedSeries> {
    (series(), 0.5..2.0f64, 0.0..(2.0 * PI)).prop_map(|(s, r, a)| {
        let mut c = s.coeffs().to_vec();
        c[0] = Complex64::new(0.0, 0.0);
        c[1] = Complex64::from_polar(r, a);
        TruncatedSeries::new(c)
    })
}

proptest! {
    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        prop_assert!((&a + &b).max_abs_diff(&(&b + &a)) < 1e-13);
        prop_assert!((&a * &b).max_abs_diff(&(&b * &a)) < 1e-12);
        let left = &a * &(&b + &c);
        let right = &(&a * &b) + &(&a * &c);
        prop_assert!(left.max_abs_diff(&right) < 1e-11);
        let assoc = (&(&a * &b) * &c).max_abs_diff(&(&a * &(&b * &c)));
        prop_assert!(assoc < 1e-10);
        prop_assert!((&a - &a).max_abs_diff(&TruncatedSeries::zero(ORDER)) == 0.0);
    }

    #[test]
    fn division_inverts_multiplication(a in series(), b in series()) {
        let mut bc = b.coeffs().to_vec();
        bc[0] = Complex64::new(1.0, 0.5);
        let b = TruncatedSeries::new(bc);
        let q = a.div(&b).unwrap();
        prop_assert!((&q * &b).max_abs_diff(&a) < 1e-9);
    }

    #[test]
    fn compose_revert_is_identity(a in invertible()) {
        let r = a.revert().unwrap();
        let id = TruncatedSeries::identity(ORDER);
        let scale = a.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
        let tol = 1e-10 * scale.powi(ORDER as i32) / a.coeff(1).norm().powi(2 * ORDER as i32);
        prop_assert!(a.compose(&r).unwrap().max_abs_diff(&id) < tol.max(1e-10));
        prop_assert!(r.compose(&a).unwrap().max_abs_diff(&id) < tol.max(1e-10));
    }

    #[test]
    fn sqrt_squares_back(a in series()) {
        let mut c = a.coeffs().to_vec();
        c[0] = Complex64::new(1.5, -0.3);
        let a = TruncatedSeries::new(c);
        let s = a.sqrt(Branch::Plus).unwrap();
        prop_assert!((&s * &s).max_abs_diff(&a) < 1e-10);
        prop_assert!(s.coeff(0).re > 0.0);
    }

    #[test]
    fn leading_bracket_closed_form(
        alpha in 1.2..4.0f64,
        frac in 0.02..0.98f64,
        br in -2.0..3.0f64,
        bi in -1.0..1.0f64,
    ) {
        let theta = frac * (PI - PI / alpha);
        let beta = Complex64::new(br, bi);
        let sd = SaddleData::sector(alpha, theta, 8);
        let expect = sd.zeta0.powc(beta) / sd.psi().unwrap().coeff(1);
        let got = saddle_bracket(&sd, beta, 0).unwrap();
        prop_assert!((got - expect).norm() <= 1e-12 * expect.norm());
    }

    #[test]
    fn canonical_angle_is_in_window(alpha in 1.1..5.0f64, theta in -20.0..20.0f64) {
        let c = canonical_angle(theta, alpha);
        let top = PI - PI / alpha;
        prop_assert!(c > top - 2.0 * PI - 1e-12 && c <= top + 1e-12);
        let k = (theta - c) / (2.0 * PI);
        prop_assert!((k - k.round()).abs() < 1e-9);
    }
}
