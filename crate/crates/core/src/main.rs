fn main() {
    std::process::exit(charsense::cli::main_with_args(std::env::args_os()));
}
