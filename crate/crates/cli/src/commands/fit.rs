//! `motioncurve fit`: trajectory -> finest chain file.

use std::path::PathBuf;

use anyhow::{Context, Result};
use motioncurve::io::{read_trajectory, write_chains, RunConfig};
use motioncurve::{eval_chain, fit_smooth_chain, BezierChain};

#[derive(clap::Args)]
pub struct Args {
    /// Input trajectory JSON.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Output chain JSON.
    #[arg(long, short = 'o')]
    output: PathBuf,
    /// Fit joints in parallel on this many threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

pub fn run(args: Args, _cfg: &RunConfig) -> Result<()> {
    let traj = read_trajectory(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let times: Vec<f64> = (0..traj.frames()).map(|t| t as f64).collect();

    let chains: Vec<BezierChain> = if args.jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build()?;
        pool.install(|| {
            (0..traj.joints())
                .into_par_iter()
                .map(|k| fit_smooth_chain(&traj.joint_track(k), &times))
                .collect::<motioncurve::Result<Vec<_>>>()
        })?
    } else {
        (0..traj.joints())
            .map(|k| fit_smooth_chain(&traj.joint_track(k), &times))
            .collect::<motioncurve::Result<Vec<_>>>()?
    };

    // Anchors are stored, so the residual is identically zero; print it as a
    // pipeline sanity check.
    let mut residual = 0.0_f64;
    for (k, chain) in chains.iter().enumerate() {
        for (t, &time) in times.iter().enumerate() {
            residual = residual.max(eval_chain(chain, time)?.distance(traj.position(t, k)));
        }
    }
    write_chains(&args.output, 1, &chains)?;
    println!("interpolation_residual {residual}");
    println!("wrote {} ({} joints, {} anchors)", args.output.display(), chains.len(), traj.frames());
    Ok(())
}
