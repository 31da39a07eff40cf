fn main() {
    std::process::exit(vrpstw_cli::run_cli(std::env::args_os()));
}
