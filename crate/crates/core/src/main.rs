fn main() {
    std::process::exit(nnreal::cli::main());
}
