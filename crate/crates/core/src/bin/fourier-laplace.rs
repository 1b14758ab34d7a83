fn main() {
    std::process::exit(fourier_laplace::cli::run(std::env::args_os()));
}
