fn main() {
    std::process::exit(rydline_cli::run(std::env::args_os()));
}
