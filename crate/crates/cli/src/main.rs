fn main() {
    std::process::exit(nova_cli::run(std::env::args_os()));
}
