fn main() {
    let outcome = ual_cli::run(std::env::args_os());
    if let Err(e) = outcome.emit() {
        eprintln!("ual: cannot write output: {e}");
        std::process::exit(2);
    }
    std::process::exit(outcome.exit_code());
}
