fn main() {
    std::process::exit(sextic_freud::cli::main_with_env());
}
