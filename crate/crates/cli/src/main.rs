fn main() {
    std::process::exit(imgkit_cli::run(std::env::args_os()));
}
