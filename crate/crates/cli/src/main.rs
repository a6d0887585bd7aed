use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cyclocode::args::Cli;
use cyclocode::error::EXIT_VALIDATION;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_VALIDATION as u8
            } else {
                0
            });
        }
    };
    match cyclocode::execute(&cli.command) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            for v in e.violations() {
                if let Ok(json) = serde_json::to_string(v) {
                    eprintln!("  {json}");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
