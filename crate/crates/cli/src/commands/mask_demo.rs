//! `motioncurve mask-demo`: frame-drop robustness sweep on the built-in
//! sinusoid fixture, plus frame-mask and attention-mask exports.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::ValueEnum;
use motioncurve::analysis::bridge_error_sweep;
use motioncurve::io::{mask_to_csv, write_json, MaskDoc, RunConfig};
use motioncurve::synth::{gen_trajectory, make_frame_mask, MaskPolicy, MotionKind, SynthSpec};
use motioncurve::{build_block_causal_mask, Schedule, Vec3};

use super::{parse_list, write_text};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Policy {
    Continuous,
    Random,
}

impl From<Policy> for MaskPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Continuous => MaskPolicy::Continuous,
            Policy::Random => MaskPolicy::Random,
        }
    }
}

#[derive(clap::Args)]
pub struct Args {
    /// Fixture length in frames.
    #[arg(long, short = 'T', default_value_t = 128)]
    frames: usize,
    /// Policy of the exported frame mask.
    #[arg(long, value_enum, default_value_t = Policy::Continuous)]
    policy: Policy,
    /// Drop ratio of the exported frame mask.
    #[arg(long, default_value_t = 0.25)]
    ratio: f64,
    /// Mask seed; defaults to the config value.
    #[arg(long)]
    seed: Option<u64>,
    /// Schedule for the attention-mask dump; defaults to the config value.
    #[arg(long)]
    schedule: Option<String>,
    /// Output CSV: bridged error per ratio in {0.1..0.7} for both policies.
    #[arg(long, short = 'o')]
    output: PathBuf,
    /// Write the frame mask (policy/ratio/seed above) as JSON.
    #[arg(long)]
    frame_mask_out: Option<PathBuf>,
    /// Dump the attention mask as a dense 0/1 CSV.
    #[arg(long)]
    attention_csv: Option<PathBuf>,
    /// Dump the attention mask's span rules as JSON.
    #[arg(long)]
    attention_json: Option<PathBuf>,
}

/// The demo trajectory: a 1 m, 0.2 Hz sinusoid, the fixture used by the
/// robustness analyses.
fn fixture(frames: usize, fps: f64) -> motioncurve::Result<motioncurve::Trajectory> {
    gen_trajectory(&SynthSpec {
        frames,
        joints: 1,
        fps,
        seed: 0,
        kind: MotionKind::Sinusoid {
            amplitude: 1.0,
            frequency_hz: 0.2,
            phase: 0.0,
            axis: Vec3::new(0.0, 1.0, 0.0),
        },
    })
}

pub fn run(args: Args, cfg: &RunConfig) -> Result<()> {
    let seed = args.seed.unwrap_or(cfg.seed);
    let traj = fixture(args.frames, cfg.fps)?;

    let ratios = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7];
    let rows = bridge_error_sweep(&traj, &ratios, seed)?;
    let mut csv = String::from("ratio,policy,occluded_frames,rmse_occluded_m,rmse_all_m\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            row.ratio, row.policy, row.occluded_frames, row.rmse_occluded_m, row.rmse_all_m
        ));
    }
    write_text(&args.output, &csv)?;
    println!("wrote {} ({} rows)", args.output.display(), rows.len());

    if let Some(path) = &args.frame_mask_out {
        let mask = make_frame_mask(args.frames, args.policy.into(), args.ratio, seed)?;
        let doc = serde_json::json!({
            "T": args.frames,
            "policy": MaskPolicy::from(args.policy),
            "ratio": args.ratio,
            "seed": seed,
            "occluded_frames": mask.occluded_count(),
            "observed": mask.observed,
        });
        write_json(path, &doc)?;
        println!("wrote {}", path.display());
    }

    if args.attention_csv.is_some() || args.attention_json.is_some() {
        let steps = match &args.schedule {
            Some(text) => parse_list::<usize>(text).context("parsing --schedule")?,
            None => cfg.schedule.clone(),
        };
        let schedule = Schedule::new(steps)?;
        let sizes: Vec<usize> =
            schedule.steps().iter().map(|&s| args.frames.div_ceil(s)).collect();
        let mask = build_block_causal_mask(args.frames, &schedule, &sizes)?;
        if let Some(path) = &args.attention_csv {
            write_text(path, &mask_to_csv(&mask))?;
            println!("wrote {}", path.display());
        }
        if let Some(path) = &args.attention_json {
            write_json(path, &MaskDoc::from_mask(&mask))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
