fn main() {
    std::process::exit(ldlab::cli::main_from_env());
}
