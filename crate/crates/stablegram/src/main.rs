fn main() {
    std::process::exit(stablegram::cli::main());
}
