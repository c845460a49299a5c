fn main() {
    std::process::exit(resilient_spanner::cli::run(std::env::args_os()));
}
