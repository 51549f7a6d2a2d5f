//! `cradle` — build, simulate, verify and transform analytic mass-spring
//! chains with perfect pulse transfer and fractional revival.
//!
//! Exit codes: 0 all requested checks pass, 1 a certificate failed,
//! 2 invalid input. The environment variable `CRADLE_TOL` overrides the
//! default certificate tolerance (1e-8) used by `verify`.

mod commands;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cradle",
    version,
    about = "Analytic mass-spring chains with perfect pulse transfer and fractional revival",
    after_help = "Environment:\n  CRADLE_TOL  overrides the default certificate tolerance (1e-8)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a chain document from family parameters
    Build(commands::build::BuildArgs),
    /// Evolve a chain and emit trajectory/snapshot CSV data
    Simulate(commands::simulate::SimulateArgs),
    /// Check certificates (perfect transfer, revival, spectrum, ...)
    Verify(commands::verify::VerifyArgs),
    /// Deform or surger an existing chain document
    Transform(commands::transform::TransformArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Build(args) => commands::build::run(args),
        Cmd::Simulate(args) => commands::simulate::run(args),
        Cmd::Verify(args) => commands::verify::run(args),
        Cmd::Transform(args) => commands::transform::run(args),
    };
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
