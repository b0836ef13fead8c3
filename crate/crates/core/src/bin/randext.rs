fn main() {
    std::process::exit(randext::cli::run(std::env::args_os()));
}
