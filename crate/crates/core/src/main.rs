fn main() {
    std::process::exit(netgap::cli::run(std::env::args_os()));
}
