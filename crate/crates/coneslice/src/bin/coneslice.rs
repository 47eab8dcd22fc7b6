fn main() {
    std::process::exit(coneslice::cli::run(std::env::args()));
}
