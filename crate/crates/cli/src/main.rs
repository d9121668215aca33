use std::io::Write;

fn main() {
    let result = gassmann_cli::run(std::env::args_os());
    if !result.payload.is_null() {
        let text = gassmann::io::to_pretty(&result.payload);
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    if !result.log.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", result.log);
    }
    std::process::exit(result.exit_code);
}
