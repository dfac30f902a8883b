use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use csalg_cli::{execute, render, Cli, OutputMode};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(&cli) {
        Ok(records) => {
            let mut out = std::io::stdout().lock();
            for line in render(&records, cli.mode) {
                let _ = writeln!(out, "{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match cli.mode {
                OutputMode::Text => eprintln!("error: {e}"),
                OutputMode::Structured => {
                    eprintln!("{}", serde_json::json!({"verb": cli.command.verb(), "error": e.to_string(), "kind": e.kind()}))
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
