fn main() {
    std::process::exit(hodos_cli::run(std::env::args_os()));
}
