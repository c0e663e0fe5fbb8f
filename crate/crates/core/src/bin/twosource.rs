fn main() {
    std::process::exit(twosource::cli::main_from_args(std::env::args_os()));
}
