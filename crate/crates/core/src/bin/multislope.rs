fn main() {
    std::process::exit(multislope::cli::main_from_env());
}
