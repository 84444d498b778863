fn main() {
    std::process::exit(ringlab::harness::cli::main());
}
