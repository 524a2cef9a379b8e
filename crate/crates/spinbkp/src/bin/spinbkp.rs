fn main() {
    std::process::exit(spinbkp::cli::main_from_args());
}
