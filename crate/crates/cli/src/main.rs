fn main() {
    std::process::exit(qumbral_cli::main_with_args(std::env::args_os()));
}
