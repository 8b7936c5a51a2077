fn main() {
    std::process::exit(robustci::cli::run(std::env::args_os()));
}
