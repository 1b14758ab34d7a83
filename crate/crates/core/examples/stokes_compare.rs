//! Oracle against truncated expansions on rays on either side of the positive real axis.

use fourier_laplace::verification::convergence_report;
use fourier_laplace::Params;

fn main() {
    let p = Params::real(3.0, 0.0).unwrap();
    let radii = [4.0, 6.0, 9.0, 13.5, 20.0];
    for theta in [-0.4, -0.05, 0.0, 0.05, 0.4] {
        let rep = match convergence_report(&p, theta, &radii, 2, 1e-13) {
            Ok(r) => r,
            Err(e) => {
                println!("theta = {theta}: {e}");
                continue;
            }
        };
        print!("theta = {theta:>5}:");
        for row in &rep.rows {
            print!(" {:.2e}", row.abs_error);
        }
        println!(
            "  slope {} (predicted {})",
            rep.fitted_slope.map_or("-".into(), |s| format!("{s:.2}")),
            rep.predicted_slope.map_or("-".into(), |s| format!("{s:.2}")),
        );
    }
}
