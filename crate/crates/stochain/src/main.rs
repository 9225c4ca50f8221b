fn main() {
    std::process::exit(stochain::cli::main());
}
