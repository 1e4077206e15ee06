fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(partition_theta::cli::run(&argv));
}
