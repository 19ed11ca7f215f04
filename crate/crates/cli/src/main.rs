fn main() {
    std::process::exit(qmzv_cli::run(std::env::args_os()));
}
