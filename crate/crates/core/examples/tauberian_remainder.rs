//! Remainder of the extremal Tauberian example: slope -1-2/kappa, or -1/kappa when smoothed.

use fourier_laplace::tauberian::{extremal_remainder, TauberianCase};

fn main() {
    let runs = [
        (1.0, false, vec![10.0, 14.0, 20.0, 28.0, 40.0]),
        (2.0, false, vec![25.0, 50.0, 100.0, 200.0, 400.0]),
        (0.5, false, vec![5.0, 7.0, 10.0, 14.0, 20.0]),
        (1.0, true, vec![20.0, 40.0, 80.0, 160.0, 320.0]),
    ];
    for (kappa, smoothed, xs) in runs {
        let case = TauberianCase::new(kappa, smoothed).unwrap();
        let t = extremal_remainder(&case, &xs, 1e-13).unwrap();
        println!("kappa {kappa}, smoothed {smoothed}: L(0) = {:.12}", t.laplace_at_zero);
        for r in &t.rows {
            println!("  x = {:>6}: |residual| = {:.3e}", r.x, r.abs_residual);
        }
        println!(
            "  fitted slope {:.4}, predicted {:.4}",
            t.fitted_slope.unwrap_or(f64::NAN),
            t.predicted_slope
        );
    }
}
