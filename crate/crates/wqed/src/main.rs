fn main() {
    std::process::exit(wqed::cli::main_entry());
}
