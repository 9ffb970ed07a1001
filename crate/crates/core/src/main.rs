fn main() {
    let code = ic_rates::cli::cli_main(std::env::args_os());
    std::process::exit(code);
}
