fn main() {
    std::process::exit(harmonic_curves_cli::run(std::env::args_os()));
}
