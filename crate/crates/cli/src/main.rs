//! `orbita`: orbit-method invariants, Heisenberg harmonic analysis and the
//! commutative nilmanifold tables from the command line.

mod commands;
mod error;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{algebra, heis, orbit, registry, spherical};
use error::CliError;
use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "orbita", version, about = "Harmonic analysis on nilpotent Lie groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: Format,
    /// Seed for every random sample drawn by the run.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Overrides the pass threshold of numeric checks.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

impl Global {
    pub fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate Lie algebra files.
    #[command(subcommand)]
    Algebra(algebra::AlgebraCommand),
    /// Coadjoint orbits, Pfaffians and polarizations.
    #[command(subcommand)]
    Orbit(orbit::OrbitCommand),
    /// Numerical experiments on the Heisenberg group.
    #[command(subcommand)]
    Heis(heis::HeisCommand),
    /// Bessel and Laguerre spherical functions.
    #[command(subcommand)]
    Spherical(spherical::SphericalCommand),
    /// Kač and Vinberg tables, multiplicity-free checks.
    #[command(subcommand)]
    Registry(registry::RegistryCommand),
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Algebra(c) => algebra::run(c, g),
        Command::Orbit(c) => orbit::run(c, g),
        Command::Heis(c) => heis::run(c, g),
        Command::Spherical(c) => spherical::run(c, g),
        Command::Registry(c) => registry::run(c, g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| {
        report.emit(cli.global.output)?;
        Ok(report.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
