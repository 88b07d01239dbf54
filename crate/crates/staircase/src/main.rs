fn main() {
    std::process::exit(staircase::cli::run());
}
