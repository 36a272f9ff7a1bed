fn main() {
    std::process::exit(similattice_cli::run(std::env::args_os()));
}
