fn main() {
    std::process::exit(lucas_realize::cli::main_entry())
}
