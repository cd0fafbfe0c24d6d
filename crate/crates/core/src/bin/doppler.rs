fn main() {
    std::process::exit(doppler_core::cli::main_with_args(std::env::args_os()));
}
