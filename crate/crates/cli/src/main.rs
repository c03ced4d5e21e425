use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use grzh_cli::args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match grzh_cli::execute(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            if out.property_failure {
                eprintln!("grzh: one or more properties failed");
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("grzh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
