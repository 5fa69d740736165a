fn main() {
    std::process::exit(k3stab::cli::run(std::env::args_os()));
}
