//! Coefficients of the ray expansions and how well a few terms do at moderate R.

use std::f64::consts::PI;

use fourier_laplace::asymptotics::{evaluate_expansion, evaluate_expansion_log, expansion_on_ray};
use fourier_laplace::evaluator::evaluate;
use fourier_laplace::{Complex64, Params};

fn main() {
    let p = Params::real(2.0, 0.5).unwrap();
    for theta in [-PI / 2.0, 0.0, PI / 4.0] {
        let e = expansion_on_ray(&p, theta, 3).unwrap();
        println!("theta = {theta:.4}  case {:?}", e.case_tag);
        for (n, t) in e.algebraic_terms.iter().take(3).enumerate() {
            println!("  c_{n} = {:.10}  R^-({:.2})", t.c, t.exponent);
        }
        if let Some(x) = &e.exp_part {
            println!("  exp({:.4} R^{:.1}) R^{:.2}", x.growth_coeff, x.growth_power, x.power_exponent);
            for (n, d) in x.d_terms.iter().take(3).enumerate() {
                println!("  d_{n} = {d:.10}");
            }
        }
        for r in [5.0, 10.0] {
            let f = evaluate(&p, Complex64::from_polar(r, theta)).unwrap().value;
            let s = evaluate_expansion(&e, r, 3).unwrap();
            let err = (f - s.value).norm();
            println!("  R = {r:>4}: |F - S_3|/|F| = {:.2e}, next term / |F| ~ {:.2e}", err / f.norm(), s.next_term_magnitude / f.norm());
        }
    }

    // far out in sector 2 only the log-scaled form is representable
    let e = expansion_on_ray(&p, PI / 4.0, 4).unwrap();
    let l = evaluate_expansion_log(&e, 80.0, 4).unwrap();
    println!("\nR = 80, theta = pi/4: ln|F| ~ {:.6}, arg F ~ {:.6}", l.ln_abs, l.arg);
}
