fn main() {
    std::process::exit(nquandle::cli::run(std::env::args_os()));
}
