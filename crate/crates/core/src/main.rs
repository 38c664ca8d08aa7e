fn main() {
    std::process::exit(dhatu::pipeline::cli::run(std::env::args_os()));
}
