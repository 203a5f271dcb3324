fn main() {
    std::process::exit(pqg::cli::main_entry());
}
