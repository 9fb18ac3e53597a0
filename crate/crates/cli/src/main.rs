use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kchern::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.json.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("kchern: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
