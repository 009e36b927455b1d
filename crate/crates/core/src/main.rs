fn main() {
    std::process::exit(logaesthetic::cli::run(std::env::args_os()));
}
