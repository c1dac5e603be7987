use std::process::ExitCode;

use clap::Parser;
use nilgen::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command);
    let text = serde_json::to_string_pretty(&result).expect("result serializes");
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if let Some(msg) = result.payload.get("error").and_then(|v| v.as_str()) {
        eprintln!("error: {msg}");
    }
    println!("{text}");
    ExitCode::from(result.status.exit_code() as u8)
}
