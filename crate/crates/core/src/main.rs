fn main() {
    std::process::exit(crossbar_mapper::cli::run(std::env::args_os()));
}
