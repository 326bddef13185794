fn main() {
    std::process::exit(attndisco_cli::main_entry());
}
