fn main() {
    std::process::exit(msnring::cli::run());
}
