fn main() {
    std::process::exit(selfsim_cli::main_with(std::env::args_os()));
}
