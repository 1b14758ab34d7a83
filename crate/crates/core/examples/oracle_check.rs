//! Fast evaluator against the brute-force oracle on a small grid.

use std::f64::consts::PI;

use fourier_laplace::evaluator::evaluate;
use fourier_laplace::verification::oracle_eval;
use fourier_laplace::{Complex64, Params};

fn main() {
    for (alpha, beta) in [(1.5, Complex64::new(0.0, 0.0)), (3.0, Complex64::new(-0.5, 1.0)), (2.0, Complex64::new(-2.0, 0.0))] {
        let p = Params::new(alpha, beta).unwrap();
        let mut worst = 0.0f64;
        for k in 0..12 {
            let z = Complex64::from_polar(0.5 + k as f64 * 0.4, -PI + 2.0 * PI * (k as f64 + 0.5) / 12.0);
            let (Ok(e), Ok(o)) = (evaluate(&p, z), oracle_eval(&p, z, 1e-12)) else {
                println!("  skipped z = {z:.3}");
                continue;
            };
            worst = worst.max((e.value - o.value).norm() / o.value.norm());
        }
        println!("alpha {alpha}, beta {beta}: max relative difference {worst:.2e}");
    }
}
