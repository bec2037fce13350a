fn main() {
    std::process::exit(divmoment_cli::main_with_args(std::env::args_os()));
}
