mod commands;
mod io;
mod suite;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use crate::commands::Command;
use crate::io::CliError;

/// Exact real root counting and sparse polynomial system tools.
///
/// Every command prints one JSON object {"status": "ok"|"error", "payload": …}.
/// Exit codes: 0 ok, 1 domain error, 2 usage error.
#[derive(Parser, Debug)]
#[command(name = "realcount", version)]
struct Cli {
    /// Add the wall-clock time of the operation as "timing_ms".
    #[arg(long, global = true)]
    timing: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

fn emit(v: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = writeln!(out, "{}", text.expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let err = CliError::Usage(e.kind().to_string());
            emit(&json!({"status": "error", "payload": err.payload()}), false);
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let result = commands::run(cli.command);
    let timing_ms = start.elapsed().as_millis() as u64;
    let (mut out, code) = match result {
        Ok(commands::Output { payload, failed }) => {
            let status = if failed { "error" } else { "ok" };
            (json!({"status": status, "payload": payload}), if failed { 1 } else { 0 })
        }
        Err(e) => (json!({"status": "error", "payload": e.payload()}), e.exit_code()),
    };
    if cli.timing {
        out["timing_ms"] = json!(timing_ms);
    }
    emit(&out, cli.pretty);
    ExitCode::from(code)
}
