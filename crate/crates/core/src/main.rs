fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(rpq_core::cli::run(&args));
}
