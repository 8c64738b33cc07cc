fn main() {
    std::process::exit(adjoint_chevalley::cli::run(std::env::args_os()));
}
