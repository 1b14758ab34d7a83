//! S(x) = int_0^{log x} (1 + cos v^alpha) e^v dv: its oscillating main term and Mellin transform.

use fourier_laplace::tauberian::{mueger_mellin, mueger_s, mueger_s_main_term};
use fourier_laplace::Complex64;

fn main() {
    let alpha = 2.0;
    for k in 2..=6 {
        let x = (k as f64).exp();
        let s = mueger_s(alpha, x, 1e-12).unwrap();
        let main = mueger_s_main_term(alpha, x);
        println!("x = e^{k}: S = {s:.6}, x + main = {:.6}, rel err {:.4}", x + main, (s - x - main).abs() / s);
    }
    for s in [Complex64::new(2.0, 0.0), Complex64::new(1.5, 1.0), Complex64::new(3.0, -2.0)] {
        let m = mueger_mellin(alpha, s, 1e-8).unwrap();
        println!(
            "s = {s}: numeric {:.10}, closed form {:.10}, diff {:.1e}",
            m.numeric,
            m.closed_form,
            (m.numeric - m.closed_form).norm()
        );
    }
}
