//! `motioncurve resample`: chain -> trajectory at target times.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use motioncurve::io::{read_chains, write_trajectory, RunConfig};
use motioncurve::{resample_level, Trajectory};

use super::parse_list;

#[derive(clap::Args)]
pub struct Args {
    /// Input chain JSON.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Target times: "all" for every integer frame time in the chain span,
    /// or a comma-separated list like "0,0.5,1".
    #[arg(long, default_value = "all")]
    times: String,
    /// Frame rate stamped on the output trajectory; defaults to the config
    /// value (chain files carry no rate).
    #[arg(long)]
    fps: Option<f64>,
    /// Output trajectory JSON.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

pub fn run(args: Args, cfg: &RunConfig) -> Result<()> {
    let (step, chains) = read_chains(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let (t0, t1) = chains[0].time_span();

    let times: Vec<f64> = if args.times.trim() == "all" {
        let first = t0.ceil() as i64;
        let last = t1.floor() as i64;
        (first..=last).map(|t| t as f64).collect()
    } else {
        parse_list::<f64>(&args.times).context("parsing --times")?
    };
    if times.len() < 2 {
        bail!("need at least 2 target times, got {}", times.len());
    }

    let mut columns = Vec::with_capacity(chains.len());
    for chain in &chains {
        columns.push(resample_level(chain, &times)?);
    }
    let traj = Trajectory::from_fn(times.len(), chains.len(), args.fps.unwrap_or(cfg.fps), |t, k| {
        columns[k][t]
    })?;
    let meta = serde_json::json!({
        "resampled_from_step": step,
        "times": times,
    });
    write_trajectory(&args.output, &traj, Some(meta))?;
    println!("wrote {} ({} frames, {} joints)", args.output.display(), traj.frames(), traj.joints());
    Ok(())
}
