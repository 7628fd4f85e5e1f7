fn main() {
    std::process::exit(cycle_splines::cli::main());
}
