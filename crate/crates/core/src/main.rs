fn main() {
    std::process::exit(plate_lab::cli::run_cli(std::env::args()));
}
