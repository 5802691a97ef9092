fn main() {
    std::process::exit(harness_cli::cli_dispatch());
}
