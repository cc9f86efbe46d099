fn main() {
    std::process::exit(kcm::cli::main_entry());
}
