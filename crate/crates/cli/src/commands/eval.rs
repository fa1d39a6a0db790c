//! `motioncurve eval`: metric report between two trajectories, or the
//! representation loss between two packed hierarchies.

use std::path::PathBuf;

use anyhow::{Context, Result};
use motioncurve::io::{read_multilevel, read_trajectory, write_json, RunConfig};
use motioncurve::metrics::{root_align, MetricReport};
use motioncurve::representation_loss;

use super::write_text;

#[derive(clap::Args)]
pub struct Args {
    /// Predicted trajectory (or packed multi-level with --multilevel).
    #[arg(long)]
    pred: PathBuf,
    /// Ground-truth trajectory (or packed multi-level with --multilevel).
    #[arg(long)]
    gt: PathBuf,
    /// Subtract the root joint (index 0) from both inputs first.
    #[arg(long, conflicts_with = "multilevel")]
    root_align: bool,
    /// Inputs are packed multi-level documents; report the representation
    /// loss instead of trajectory metrics.
    #[arg(long)]
    multilevel: bool,
    /// Write the report as JSON (defaults to stdout).
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Also write the report as a one-row CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

pub fn run(args: Args, cfg: &RunConfig) -> Result<()> {
    if args.multilevel {
        let pred = read_multilevel(&args.pred)
            .with_context(|| format!("reading {}", args.pred.display()))?;
        let gt = read_multilevel(&args.gt)
            .with_context(|| format!("reading {}", args.gt.display()))?;
        let loss = representation_loss(&pred, &gt)?;
        let doc = serde_json::json!({
            "representation_loss": loss,
            "lambda_m": cfg.lambda_m,
            "weighted_loss": cfg.lambda_m * loss,
        });
        match &args.output {
            Some(path) => write_json(path, &doc)?,
            None => println!("{}", serde_json::to_string_pretty(&doc)?),
        }
        if let Some(path) = &args.csv {
            write_text(
                path,
                &format!(
                    "representation_loss,lambda_m,weighted_loss\n{},{},{}\n",
                    loss,
                    cfg.lambda_m,
                    cfg.lambda_m * loss
                ),
            )?;
        }
        return Ok(());
    }

    let mut pred = read_trajectory(&args.pred)
        .with_context(|| format!("reading {}", args.pred.display()))?;
    let mut gt = read_trajectory(&args.gt)
        .with_context(|| format!("reading {}", args.gt.display()))?;
    if args.root_align {
        pred = root_align(&pred)?;
        gt = root_align(&gt)?;
    }
    let report = MetricReport::compute(&pred, &gt)?;
    match &args.output {
        Some(path) => write_json(path, &report)?,
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    if let Some(path) = &args.csv {
        write_text(path, &report.to_csv())?;
    }
    Ok(())
}
