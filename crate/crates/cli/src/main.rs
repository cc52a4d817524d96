use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use qnorm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            let text = outcome.to_text(start.elapsed().as_millis());
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(4);
            }
            match outcome.failure {
                Some(e) => {
                    eprintln!("qnorm: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("qnorm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
