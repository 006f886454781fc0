use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use wsc_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match wsc_cli::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.output.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
