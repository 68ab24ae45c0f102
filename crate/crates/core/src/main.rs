use std::io::Write;

fn main() {
    let outcome = qpl::cli::run(std::env::args_os(), &qpl::cli::qpl_env());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
