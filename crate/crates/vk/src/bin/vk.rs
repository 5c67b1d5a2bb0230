fn main() {
    std::process::exit(vk::cli::run(std::env::args()));
}
