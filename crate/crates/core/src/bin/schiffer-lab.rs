fn main() {
    std::process::exit(schiffer_lab::cli::main());
}
