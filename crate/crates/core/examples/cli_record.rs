//! Drive the command-line entry point in-process and round-trip its output.

use fourier_laplace::cli::{run_with, OutputRecord};

fn main() {
    let argv = ["fourier-laplace", "--no-header", "--format", "csv", "compare", "--alpha", "2", "--theta", "-1", "--radii", "5,10,20", "--terms", "2"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(argv, &mut out, &mut err);
    let csv = String::from_utf8(out).unwrap();
    println!("exit {code}\n{csv}");
    let rec = OutputRecord::from_csv(&csv).unwrap();
    print!("{}", rec.to_json().unwrap());
    assert_eq!(OutputRecord::from_json(&rec.to_json().unwrap()).unwrap(), rec);
}
