fn main() {
    std::process::exit(overpart::cli::run(std::env::args_os()));
}
