fn main() {
    std::process::exit(closedrange_cli::run(std::env::args_os()));
}
