fn main() {
    let code = hypertrees::cli::run(std::env::args(), &mut std::io::stdout());
    std::process::exit(code);
}
