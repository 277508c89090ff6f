fn main() {
    std::process::exit(cocycle_forge::cli::main());
}
