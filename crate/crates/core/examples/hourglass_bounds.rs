//! Growth of |F| on the hourglass region against the polynomial bound.

use fourier_laplace::verification::{bound_scan, hourglass_height};
use fourier_laplace::Params;

fn main() {
    let xs: Vec<f64> = (0..10).map(|k| 4.0 * 2f64.powf(k as f64 / 2.0)).collect();
    for (alpha, beta, c) in [(2.0, 0.0, 0.5), (3.0, 0.5, 1.0), (2.0, -1.0, 0.5)] {
        let p = Params::real(alpha, beta).unwrap();
        let rep = bound_scan(&p, c, &xs).unwrap();
        println!(
            "alpha {alpha}, beta {beta}, C {c}: fitted {:.3}, bound {:.3}{}, x<0 slope {:.3}",
            rep.fitted_exponent,
            rep.predicted_exponent,
            if rep.log_factor_flag { " (with log factor)" } else { "" },
            rep.negative_fitted_exponent,
        );
        println!("  edge height at x = {}: {:.4}", xs[9], hourglass_height(&p, c, xs[9]));
    }
}
