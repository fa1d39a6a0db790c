//! The `motioncurve` pipeline: synth -> fit -> degrade -> resample |
//! bridge -> eval / analyze.
//!
//! All data moves through JSON files (trajectories, chains, packed levels)
//! and CSV tables. Exit status is 0 iff the command succeeded; every error
//! goes to standard error.

mod commands;
mod config;

use clap::{Parser, Subcommand};

use commands::{analyze, degrade, eval, fit, mask_demo, resample, synth};

#[derive(Parser)]
#[command(
    name = "motioncurve",
    version,
    about = "Cubic Bézier chain motion toolkit: fitting, degradation, resampling, masks, metrics",
    propagate_version = true
)]
struct Cli {
    /// Config file path; defaults to $MOTIONCURVE_CONFIG when set.
    /// Precedence: flags > config file > defaults.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic trajectory file.
    Synth(synth::Args),
    /// Fit the finest smooth chain through a trajectory (one anchor per frame).
    Fit(fit::Args),
    /// Degrade a finest chain to one step or a whole schedule.
    Degrade(degrade::Args),
    /// Evaluate a chain at target times, writing a trajectory.
    Resample(resample::Args),
    /// Approximation error versus control-point budget, as CSV.
    Analyze(analyze::Args),
    /// Frame-drop robustness sweep plus mask exports.
    MaskDemo(mask_demo::Args),
    /// Compare two trajectories (or packed hierarchies) and report metrics.
    Eval(eval::Args),
}

fn main() {
    let cli = Cli::parse();
    let result = config::load(cli.config.as_deref()).and_then(|cfg| match cli.command {
        Command::Synth(args) => synth::run(args, &cfg),
        Command::Fit(args) => fit::run(args, &cfg),
        Command::Degrade(args) => degrade::run(args, &cfg),
        Command::Resample(args) => resample::run(args, &cfg),
        Command::Analyze(args) => analyze::run(args, &cfg),
        Command::MaskDemo(args) => mask_demo::run(args, &cfg),
        Command::Eval(args) => eval::run(args, &cfg),
    });
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
