fn main() {
    std::process::exit(psl2kit::cli::run(std::env::args_os()));
}
