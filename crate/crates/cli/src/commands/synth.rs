//! `motioncurve synth`: write a deterministic synthetic trajectory.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use motioncurve::io::{write_trajectory, RunConfig};
use motioncurve::synth::{gen_trajectory, MotionKind, SynthSpec};
use motioncurve::{add_noise, Vec3};

use super::parse_vec3;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Line,
    Sinusoid,
    Circle,
    Lissajous,
    SmoothWalk,
    Polynomial,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, short = 'T', default_value_t = 128)]
    frames: usize,
    #[arg(long, short = 'K', default_value_t = 1)]
    joints: usize,
    /// Frames per second; defaults to the config value.
    #[arg(long)]
    fps: Option<f64>,
    /// Generator seed; defaults to the config value.
    #[arg(long)]
    seed: Option<u64>,

    /// Line start point, "x,y,z" meters.
    #[arg(long, default_value = "0,0,0")]
    start: String,
    /// Line velocity, "x,y,z" meters per frame.
    #[arg(long, default_value = "1,0,0")]
    velocity: String,
    /// Sinusoid/circle amplitude or radius, meters.
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Oscillation frequency, Hz (per axis for lissajous: "fx,fy,fz").
    #[arg(long, default_value = "0.2")]
    frequency: String,
    /// Phase offset, radians (per axis for lissajous: "px,py,pz").
    #[arg(long, default_value = "0")]
    phase: String,
    /// Sinusoid axis, "x,y,z".
    #[arg(long, default_value = "0,1,0")]
    axis: String,
    /// Lissajous per-axis amplitudes, "ax,ay,az" meters.
    #[arg(long, default_value = "1,0.5,0.25")]
    amplitudes: String,
    /// Smooth-walk acceleration sigma, m/s^2.
    #[arg(long, default_value_t = 1.0)]
    accel_sigma: f64,
    /// Smooth-walk low-pass cutoff, Hz.
    #[arg(long, default_value_t = 1.0)]
    cutoff: f64,
    /// Polynomial coefficients, constant term first: "x,y,z;x,y,z;...".
    #[arg(long, default_value = "0,0,0;1,0,0")]
    coefficients: String,

    /// Add iid Gaussian noise of this sigma (meters) after generation.
    #[arg(long, default_value_t = 0.0)]
    noise_sigma: f64,

    /// Output trajectory JSON path.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

fn scalar(text: &str, what: &str) -> Result<f64> {
    text.trim().parse::<f64>().with_context(|| format!("parsing --{what} {text:?}"))
}

pub fn run(args: Args, cfg: &RunConfig) -> Result<()> {
    let fps = args.fps.unwrap_or(cfg.fps);
    let seed = args.seed.unwrap_or(cfg.seed);
    let kind = match args.kind {
        Kind::Line => MotionKind::Line {
            start: parse_vec3(&args.start)?,
            velocity: parse_vec3(&args.velocity)?,
        },
        Kind::Sinusoid => MotionKind::Sinusoid {
            amplitude: args.amplitude,
            frequency_hz: scalar(&args.frequency, "frequency")?,
            phase: scalar(&args.phase, "phase")?,
            axis: parse_vec3(&args.axis)?,
        },
        Kind::Circle => MotionKind::Circle {
            radius: args.amplitude,
            frequency_hz: scalar(&args.frequency, "frequency")?,
        },
        Kind::Lissajous => {
            let frequency_hz = parse_vec3(&args.frequency)
                .or_else(|_| scalar(&args.frequency, "frequency").map(|f| Vec3::new(f, f, f)))?;
            let phase = parse_vec3(&args.phase)
                .or_else(|_| scalar(&args.phase, "phase").map(|p| Vec3::new(p, p, p)))?;
            MotionKind::Lissajous { amplitude: parse_vec3(&args.amplitudes)?, frequency_hz, phase }
        }
        Kind::SmoothWalk => MotionKind::SmoothWalk {
            accel_sigma: args.accel_sigma,
            cutoff_hz: args.cutoff,
        },
        Kind::Polynomial => {
            let coefficients = args
                .coefficients
                .split(';')
                .map(parse_vec3)
                .collect::<Result<Vec<_>>>()
                .context("parsing --coefficients")?;
            if coefficients.is_empty() {
                bail!("--coefficients needs at least one term");
            }
            MotionKind::Polynomial { coefficients }
        }
    };

    let spec = SynthSpec { frames: args.frames, joints: args.joints, fps, seed, kind };
    let mut traj = gen_trajectory(&spec)?;
    if args.noise_sigma > 0.0 {
        traj = add_noise(&traj, args.noise_sigma, seed.wrapping_add(1))?;
    }
    let meta = serde_json::json!({
        "generator": spec,
        "noise_sigma": args.noise_sigma,
        "prng": "ChaCha8, reproducible across runs of this tool",
    });
    write_trajectory(&args.output, &traj, Some(meta))?;
    println!("wrote {} ({} frames, {} joints)", args.output.display(), traj.frames(), traj.joints());
    Ok(())
}
