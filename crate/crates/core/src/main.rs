fn main() {
    std::process::exit(prym::cli::run_from_args());
}
