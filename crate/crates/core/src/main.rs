fn main() {
    std::process::exit(polygroup::cli::run(std::env::args_os()));
}
