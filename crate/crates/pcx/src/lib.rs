//! Command-line front end for `paircorr`: argument handling, zero-file
//! loading, table rendering (CSV / JSON / aligned text) and gnuplot script
//! emission. The binary in `main.rs` is a thin wrapper around [`run`].

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN-rejecting range checks

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::Path;

pub use config::{Cli, Command, Format, Range};
pub use error::CliError;

use commands::Outcome;

/// Rendered output and, if requested, the gnuplot script text.
pub struct Rendered {
    pub text: String,
    pub gnuplot: Option<String>,
}

pub fn compute(cli: &Cli) -> Result<Outcome, CliError> {
    cli.validate()?;
    match cli.command {
        Command::Bounds => commands::bounds(cli),
        Command::Twodelta => commands::twodelta(cli),
        Command::Gaps => commands::gaps(cli),
        Command::Empirical => commands::empirical(cli),
        Command::Debranges => commands::debranges(cli),
    }
}

pub fn render(cli: &Cli) -> Result<Rendered, CliError> {
    let (table, plot) = compute(cli)?;
    let text = output::render(&table, cli.format, cli.command.name(), &cli.echo());
    let gnuplot = match (&cli.gnuplot, &cli.out) {
        (Some(_), Some(out)) => {
            let plot = plot.ok_or_else(|| CliError::Config("this command has no plot output".into()))?;
            let data = out.display().to_string();
            Some(output::gnuplot_script(&table, &data, plot.x, &plot.series, plot.title))
        }
        _ => None,
    };
    Ok(Rendered { text, gnuplot })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Runs one command, writing to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let r = render(cli)?;
    match &cli.out {
        Some(p) => write_file(p, &r.text)?,
        None => print!("{}", r.text),
    }
    if let (Some(p), Some(script)) = (&cli.gnuplot, &r.gnuplot) {
        write_file(p, script)?;
    }
    Ok(())
}

/// Caps the rayon pool at `PCX_THREADS` if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("PCX_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("PCX_THREADS must be a positive integer, got {v:?}")))?;
    // a second call (e.g. from tests) finds the pool already built; keep it
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
