//! Command-line front end for `cyclocode-core`: argument parsing, report
//! types with JSON/CSV/text renderings, and the verify-grid battery.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod verify;

use std::fs;

use args::Command;
use commands::Outcome;
use error::CliError;

/// Runs one command and writes its output to `--out` or returns it.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let cfg = command.config();
    if let Some(n) = cfg.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let mut outcome = commands::run(command)?;
    if let Some(path) = &cfg.out {
        fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        outcome.output.clear();
    }
    Ok(outcome)
}
