fn main() {
    std::process::exit(deltand::cli::main_with_args(std::env::args()));
}
