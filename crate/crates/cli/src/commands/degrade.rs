//! `motioncurve degrade`: finest chain -> degraded chain(s) or packed levels.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use motioncurve::io::{read_chains, write_chains, write_multilevel, RunConfig};
use motioncurve::{degrade_chain, multilevel_from_finest, BezierChain, Schedule};

use super::parse_list;

#[derive(clap::Args)]
pub struct Args {
    /// Input finest-chain JSON (output of `fit`).
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Degrade to a single step size.
    #[arg(long, conflicts_with = "schedule")]
    step: Option<usize>,
    /// Degrade for a whole schedule, e.g. "32,16,8,1"; defaults to the
    /// config schedule when neither --step nor --schedule is given.
    #[arg(long)]
    schedule: Option<String>,
    /// Pack the schedule's levels into one multi-level JSON document.
    #[arg(long, requires = "output")]
    pack: bool,
    /// Dense samples per original frame interval in the length fit.
    #[arg(long)]
    samples_per_frame: Option<usize>,
    /// Output path; schedules without --pack write one file per step with an
    /// `_s<step>` suffix.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

fn suffixed(path: &Path, step: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("chain");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("json");
    path.with_file_name(format!("{stem}_s{step}.{ext}"))
}

pub fn run(args: Args, cfg: &RunConfig) -> Result<()> {
    let (_, finest) = read_chains(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let spf = args.samples_per_frame.unwrap_or(cfg.samples_per_frame);

    if let Some(step) = args.step {
        let degraded: Vec<BezierChain> = finest
            .iter()
            .map(|c| degrade_chain(c, step, spf))
            .collect::<motioncurve::Result<_>>()?;
        write_chains(&args.output, step, &degraded)?;
        println!("wrote {} (step {step})", args.output.display());
        return Ok(());
    }

    let steps = match &args.schedule {
        Some(text) => parse_list::<usize>(text).context("parsing --schedule")?,
        None => cfg.schedule.clone(),
    };
    let schedule = Schedule::new(steps)?;

    if args.pack {
        let ml = multilevel_from_finest(&finest, &schedule, spf)?;
        write_multilevel(&args.output, &ml)?;
        println!(
            "wrote {} ({} levels: {:?})",
            args.output.display(),
            ml.levels.len(),
            ml.levels.iter().map(|l| l.anchors()).collect::<Vec<_>>()
        );
        return Ok(());
    }

    if finest.is_empty() {
        bail!("input chain file has no joints");
    }
    for &step in schedule.steps() {
        let chains: Vec<BezierChain> = if step == 1 {
            finest.clone()
        } else {
            finest
                .iter()
                .map(|c| degrade_chain(c, step, spf))
                .collect::<motioncurve::Result<_>>()?
        };
        let path = suffixed(&args.output, step);
        write_chains(&path, step, &chains)?;
        println!("wrote {} (step {step})", path.display());
    }
    Ok(())
}
