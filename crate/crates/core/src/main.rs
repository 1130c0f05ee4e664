fn main() {
    std::process::exit(srslm::cli::main());
}
