fn main() {
    std::process::exit(efforge::cli::main_with_env());
}
