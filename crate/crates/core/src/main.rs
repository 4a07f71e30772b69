fn main() {
    std::process::exit(sqzsplit::cli::run());
}
