fn main() {
    std::process::exit(periodcalc::cli::run());
}
