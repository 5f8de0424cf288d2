fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(csl_trap::cli::run_command(&argv));
}
