fn main() {
    std::process::exit(slosh_iso_cli::run(std::env::args_os()));
}
