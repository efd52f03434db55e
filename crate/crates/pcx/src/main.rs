use std::process::ExitCode;

use clap::Parser;
use pcx::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match pcx::configure_threads().and_then(|()| pcx::run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pcx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
