//! The zoo table the `modinv zoo` command prints, driven from code.

fn main() {
    let code = modinv::cli::run(["modinv", "zoo", "--primes", "3,5"]);
    std::process::exit(code);
}
