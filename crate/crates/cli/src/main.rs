fn main() {
    std::process::exit(goldrank_cli::run());
}
