fn main() {
    std::process::exit(fractal_calculus::cli::main_with_args(std::env::args_os()));
}
