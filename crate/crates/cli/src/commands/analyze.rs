//! `motioncurve analyze`: approximation error versus control-point budget.

use std::path::PathBuf;

use anyhow::{Context, Result};
use motioncurve::analysis::degradation_error_table;
use motioncurve::io::{read_trajectory, RunConfig};

use super::{parse_list, write_text};

#[derive(clap::Args)]
pub struct Args {
    /// Input trajectory JSON.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Step sizes to evaluate.
    #[arg(long, default_value = "1,2,4,8,16,32")]
    steps: String,
    /// Dense samples per original frame interval in the length fit.
    #[arg(long)]
    samples_per_frame: Option<usize>,
    /// Output CSV path.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

pub fn run(args: Args, cfg: &RunConfig) -> Result<()> {
    let traj = read_trajectory(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let steps = parse_list::<usize>(&args.steps).context("parsing --steps")?;
    let spf = args.samples_per_frame.unwrap_or(cfg.samples_per_frame);

    let rows = degradation_error_table(&traj, &steps, spf)?;
    let mut csv = String::from("step,control_point_ratio,rmse_m,accel_err_cm_s2,max_err_m\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            row.step, row.control_point_ratio, row.rmse_m, row.accel_err_cm_s2, row.max_err_m
        ));
    }
    write_text(&args.output, &csv)?;
    println!("wrote {} ({} rows)", args.output.display(), rows.len());
    Ok(())
}
