//! Truncated power series: arithmetic, square roots and Lagrange inversion.

use fourier_laplace::series::{Branch, TruncatedSeries};
use fourier_laplace::Complex64;

fn show(name: &str, s: &TruncatedSeries) {
    let cs: Vec<String> = s.coeffs().iter().map(|c| format!("{:.4}", c.re)).collect();
    println!("{name:>14}: [{}]", cs.join(", "));
}

fn main() {
    let order = 8;
    let x_plus_x2 = TruncatedSeries::from_real(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let inv = x_plus_x2.revert().unwrap();
    show("revert(x+x^2)", &inv);
    show("compose back", &x_plus_x2.compose(&inv).unwrap());

    let e = TruncatedSeries::exp_series(order);
    show("exp", &e);
    let root = e.sqrt(Branch::Plus).unwrap();
    show("sqrt(exp)", &root);
    show("sqrt^2 - exp", &(&(&root * &root) - &e));
    show("1/exp", &TruncatedSeries::constant(Complex64::new(1.0, 0.0), order).div(&e).unwrap());

    // log(1+x) is the inverse of exp(x) - 1
    let mut em1 = e.coeffs().to_vec();
    em1[0] = Complex64::new(0.0, 0.0);
    show("log(1+x)", &TruncatedSeries::new(em1).revert().unwrap());
}
