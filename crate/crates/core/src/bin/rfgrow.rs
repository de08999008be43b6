fn main() {
    std::process::exit(rfgrow::cli::run(std::env::args_os()));
}
