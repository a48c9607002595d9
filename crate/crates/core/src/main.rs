fn main() {
    std::process::exit(zigzag::cli::run());
}
