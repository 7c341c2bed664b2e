fn main() {
    std::process::exit(legendre_det::cli::run());
}
