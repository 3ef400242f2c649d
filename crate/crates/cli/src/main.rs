fn main() {
    std::process::exit(nyqshape_cli::run(std::env::args_os()));
}
