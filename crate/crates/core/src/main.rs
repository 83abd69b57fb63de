fn main() {
    std::process::exit(affine_growth::cli::main_entry());
}
