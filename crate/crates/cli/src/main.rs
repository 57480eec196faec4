fn main() {
    std::process::exit(qmod_cli::run(std::env::args_os()));
}
