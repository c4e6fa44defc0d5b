fn main() {
    std::process::exit(packmatch::cli::run_cli(std::env::args_os()));
}
