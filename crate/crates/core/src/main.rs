fn main() {
    std::process::exit(mannheim::cli::run(std::env::args_os()));
}
