fn main() {
    std::process::exit(qplane::cli::run(std::env::args_os()));
}
