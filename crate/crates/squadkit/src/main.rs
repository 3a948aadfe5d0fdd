fn main() {
    std::process::exit(squadkit::cli::run(std::env::args()));
}
