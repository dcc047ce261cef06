fn main() {
    std::process::exit(graphbt::cli::run(std::env::args_os()));
}
