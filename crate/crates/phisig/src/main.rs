fn main() {
    std::process::exit(phisig::cli::run());
}
