//! Command-line front end for the third-sound resonator model.
//!
//! Exit codes: 0 on success (validity warnings are data, not failures),
//! 1 on usage or configuration errors, 2 on numerical failures.

mod commands;
mod config;
mod csvout;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;
use thirdsound::Error;

#[derive(Parser)]
#[command(
    name = "thirdsound",
    version,
    about = "Nonlinear mechanics of confined superfluid third-sound resonators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run configuration file (defaults apply when omitted)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output CSV path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for sweeps (default: number of processors)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Material preset, overriding the configuration file
    #[arg(long, global = true)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Spring constants, oscillator parameters and single-phonon shifts
    Springs,
    /// Lindblad displacement spectra: full, effective-Duffing and bare-Duffing
    Spectrum,
    /// Thermal-dissipation quality factors over temperature and frequency
    Thermal,
    /// Validity, critical-velocity and phonon-blockade report
    Checks,
}

fn load_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::parse(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(preset) = &cli.preset {
        config.apply_preset(preset)?;
    }
    config.validate()?;
    Ok(config)
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Error> {
    let config = load_config(cli)?;
    let out = cli
        .out
        .as_deref()
        .or(config.output.as_deref().map(Path::new));
    match cli.command {
        Command::Springs => {
            let csv = commands::cmd_springs(&config, cli.jobs)?;
            emit(out, &csv)
        }
        Command::Spectrum => {
            let output = commands::cmd_spectrum(&config)?;
            match out {
                Some(path) => {
                    std::fs::write(path, &output.table)?;
                    let mut sidecar = path.as_os_str().to_owned();
                    sidecar.push(".peaks.csv");
                    std::fs::write(PathBuf::from(sidecar), &output.peaks)?;
                    Ok(())
                }
                None => {
                    print!("{}", output.table);
                    // Keep single-stream output parseable: peaks become comments.
                    for line in output.peaks.lines() {
                        println!("# peak: {line}");
                    }
                    Ok(())
                }
            }
        }
        Command::Thermal => {
            let csv = commands::cmd_thermal(&config, cli.jobs)?;
            emit(out, &csv)
        }
        Command::Checks => {
            let output = commands::cmd_checks(&config)?;
            print!("{}", output.report);
            match out {
                Some(path) => std::fs::write(path, &output.table)?,
                None => print!("\n{}", output.table),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Version/help requests are successes; anything else is usage.
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Domain(_) | Error::Parse { .. } | Error::Range(_) => ExitCode::from(1),
                Error::Numerical(_) | Error::Internal(_) | Error::Io(_) => ExitCode::from(2),
            }
        }
    }
}
