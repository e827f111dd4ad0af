fn main() {
    std::process::exit(goi::cli::main());
}
