fn main() {
    std::process::exit(cauker::cli::run(std::env::args_os()));
}
