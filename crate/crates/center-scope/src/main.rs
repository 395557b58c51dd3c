fn main() {
    std::process::exit(center_scope::cli::run());
}
