fn main() {
    std::process::exit(boxgap::cli::run(std::env::args_os()));
}
