fn main() {
    std::process::exit(rmspace::cli::run(std::env::args_os()));
}
