use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use flag_johnson_cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(&config) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.output.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("fj: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
