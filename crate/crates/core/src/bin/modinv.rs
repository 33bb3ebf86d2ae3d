fn main() {
    std::process::exit(modinv::cli::run(std::env::args_os()));
}
