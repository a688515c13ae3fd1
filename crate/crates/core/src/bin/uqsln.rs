fn main() {
    std::process::exit(uqsln::cli::main_with_args(std::env::args_os()));
}
