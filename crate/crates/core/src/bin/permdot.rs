fn main() {
    std::process::exit(permdot::cli::main_with_env());
}
