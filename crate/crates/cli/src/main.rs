//! `rankin`: command-line front end for `rankin-core`.
//!
//! Exit codes: 0 when every check passes (or none was requested), 1 when a check fails or a
//! computation misses its tolerance, 2 for usage errors and violated preconditions.

mod cli;
mod commands;
mod config;
mod parse;
mod report;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use cli::Cli;

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<rankin_core::Error>() {
        return match e {
            rankin_core::Error::Quadrature { .. } => 1,
            _ => 2,
        };
    }
    if err.downcast_ref::<io::Error>().is_some() {
        return 1;
    }
    2
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    if let Some(n) = cli.threads {
        if n == 0 {
            anyhow::bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let report = commands::run(&cli.command)?;
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            report.write(cli.format, &mut w)?;
        }
    }
    for f in &report.failures {
        eprintln!("check failed: {f}");
    }
    Ok(report.pass != Some(false))
}

fn main() -> ExitCode {
    let args = match config::apply(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
