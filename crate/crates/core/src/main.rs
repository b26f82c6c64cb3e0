fn main() {
    std::process::exit(infocon::cli::run(std::env::args_os()));
}
