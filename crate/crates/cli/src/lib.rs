//! `flume` pipeline: scenario → SPH run → gauge and force extraction → UQ
//! sweep → plot-ready tables. Each stage writes into an output directory and
//! records every file it holds, with a sha256 checksum, in `manifest.json`.

pub mod config;
pub mod error;
pub mod forces;
pub mod manifest;
pub mod report;
pub mod simulate;
pub mod uq;

use clap::{Parser, Subcommand};

pub use error::CliError;
pub use manifest::{RunManifest, StageRecord};

#[derive(Debug, Parser)]
#[command(
    name = "flume",
    version,
    about = "Desk-scale digital wave flume and load-uncertainty pipeline"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the SPH flume and record gauges and the structure load.
    Simulate(simulate::SimulateArgs),
    /// Evaluate the force estimators on simulated runs.
    Forces(forces::ForcesArgs),
    /// Forward uncertainty sweep over cached force histories.
    Uq(uq::UqArgs),
    /// Normalised, plot-ready tables from a run directory.
    Report(report::ReportArgs),
}

impl Command {
    pub fn stage(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Forces(_) => "forces",
            Command::Uq(_) => "uq",
            Command::Report(_) => "report",
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(a) => simulate::simulate(a).map(drop),
        Command::Forces(a) => forces::forces(a).map(drop),
        Command::Uq(a) => uq::uq(a).map(drop),
        Command::Report(a) => report::report(a).map(drop),
    }
}
