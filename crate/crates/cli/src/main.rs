use std::process::ExitCode;

use clap::Parser;
use flume_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("flume {}: {e}", cli.command.stage());
            ExitCode::from(e.exit_code())
        }
    }
}
