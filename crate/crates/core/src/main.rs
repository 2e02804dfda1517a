fn main() {
    let code = logvoa::cli::run(std::env::args_os(), std::io::stdout().lock());
    std::process::exit(code);
}
