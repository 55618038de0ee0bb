fn main() {
    std::process::exit(gpatch::cli::run(std::env::args_os()));
}
