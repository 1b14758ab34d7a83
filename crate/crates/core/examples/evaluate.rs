//! Evaluate F at a few points and show which contour was used.

use fourier_laplace::evaluator::{choose_representation, evaluate};
use fourier_laplace::{Complex64, Params};

fn main() {
    let p = Params::new(2.5, Complex64::new(-0.5, 1.0)).expect("alpha > 1");
    let zs = [
        Complex64::new(0.0, 0.0),
        Complex64::new(3.0, -1.0),
        Complex64::new(-4.0, 2.0),
        Complex64::from_polar(8.0, 0.6),
    ];
    println!("{:>22} {:>14} {:>40} {:>10}", "z", "representation", "F(z)", "abs_err");
    for z in zs {
        let (rep, _) = choose_representation(&p, z);
        match evaluate(&p, z) {
            Ok(v) => println!("{:>22} {:>14?} {:>40} {:>10.1e}", format!("{z:.3}"), rep.tag, format!("{:.12}", v.value), v.abs_err),
            Err(e) => println!("{z:.3}: {e}"),
        }
    }

    // the Gaussian case has a closed form at the origin
    let g = Params::real(2.0, 0.0).unwrap();
    let v = evaluate(&g, Complex64::new(0.0, 0.0)).unwrap().value;
    let exact = Complex64::from_polar(std::f64::consts::PI.sqrt() / 2.0, std::f64::consts::FRAC_PI_4);
    println!("\nF_(2,0)(0) = {v:.15}, closed form {exact:.15}");
}
