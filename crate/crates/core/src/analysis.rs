//! Representation-level analyses: approximation error versus control-point
//! budget, and bridged reconstruction error under frame-drop policies.

use crate::degradation::degrade_chain;
use crate::error::{Error, Result};
use crate::fitting::{fit_trajectory, Trajectory};
use crate::geometry::Vec3;
use crate::metrics::{accel_error, max_error, rmse, rmse_over_frames};
use crate::reconstruction::{bridge_gaps, resample_level};
use crate::synth::{make_frame_mask, MaskPolicy};

/// One row of the control-point budget table.
#[derive(Debug, Clone, PartialEq)]
pub struct DegradationRow {
    pub step: usize,
    /// Kept anchors over original frames, `ceil(T/s) / T`.
    pub control_point_ratio: f64,
    pub rmse_m: f64,
    pub accel_err_cm_s2: f64,
    pub max_err_m: f64,
}

/// Degrade the trajectory at each step, resample at every frame time, and
/// score the reconstruction against the original. Rows are sorted by step
/// ascending.
pub fn degradation_error_table(
    traj: &Trajectory,
    steps: &[usize],
    samples_per_frame: usize,
) -> Result<Vec<DegradationRow>> {
    if steps.is_empty() {
        return Err(Error::domain("need at least one step".to_string()));
    }
    let mut sorted: Vec<usize> = steps.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let finest = fit_trajectory(traj)?;
    let frame_times: Vec<f64> = (0..traj.frames()).map(|t| t as f64).collect();

    sorted
        .into_iter()
        .map(|step| {
            let recon = reconstruct_at_step(traj, &finest, step, samples_per_frame, &frame_times)?;
            Ok(DegradationRow {
                step,
                control_point_ratio: traj.frames().div_ceil(step) as f64 / traj.frames() as f64,
                rmse_m: rmse(&recon, traj)?,
                accel_err_cm_s2: accel_error(&recon, traj)?,
                max_err_m: max_error(&recon, traj)?,
            })
        })
        .collect()
}

fn reconstruct_at_step(
    traj: &Trajectory,
    finest: &[crate::geometry::BezierChain],
    step: usize,
    samples_per_frame: usize,
    frame_times: &[f64],
) -> Result<Trajectory> {
    let mut columns: Vec<Vec<Vec3>> = Vec::with_capacity(finest.len());
    for chain in finest {
        let level = if step == 1 {
            chain.clone()
        } else {
            degrade_chain(chain, step, samples_per_frame)?
        };
        columns.push(resample_level(&level, frame_times)?);
    }
    Trajectory::from_fn(traj.frames(), traj.joints(), traj.fps(), |t, k| columns[k][t])
}

/// One row of the frame-drop robustness sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeRow {
    pub ratio: f64,
    pub policy: MaskPolicy,
    pub occluded_frames: usize,
    /// RMSE over the occluded frames only.
    pub rmse_occluded_m: f64,
    /// RMSE over all frames (observed frames contribute zero).
    pub rmse_all_m: f64,
}

/// Bridge the trajectory under one mask and score the reconstruction.
pub fn bridge_error(traj: &Trajectory, policy: MaskPolicy, ratio: f64, seed: u64) -> Result<BridgeRow> {
    let mask = make_frame_mask(traj.frames(), policy, ratio, seed)?;
    let bridged = bridge_gaps(traj, &mask)?;
    let occluded: Vec<usize> = mask
        .observed
        .iter()
        .enumerate()
        .filter(|(_, &o)| !o)
        .map(|(t, _)| t)
        .collect();
    Ok(BridgeRow {
        ratio,
        policy,
        occluded_frames: occluded.len(),
        rmse_occluded_m: rmse_over_frames(&bridged, traj, &occluded)?,
        rmse_all_m: rmse(&bridged, traj)?,
    })
}

/// Sweep both policies over the given drop ratios with one seed.
pub fn bridge_error_sweep(traj: &Trajectory, ratios: &[f64], seed: u64) -> Result<Vec<BridgeRow>> {
    let mut rows = Vec::with_capacity(ratios.len() * 2);
    for &ratio in ratios {
        for policy in [MaskPolicy::Continuous, MaskPolicy::Random] {
            rows.push(bridge_error(traj, policy, ratio, seed)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{gen_trajectory, MotionKind, SynthSpec};

    #[test]
    fn straight_line_table_is_all_zero_rmse() {
        let traj = gen_trajectory(&SynthSpec {
            frames: 64,
            joints: 2,
            fps: 10.0,
            seed: 0,
            kind: MotionKind::Line { start: Vec3::ZERO, velocity: Vec3::new(0.3, 0.1, 0.0) },
        })
        .unwrap();
        let rows = degradation_error_table(&traj, &[1, 2, 4, 8, 16, 32], 4).unwrap();
        assert_eq!(rows.len(), 6);
        for row in &rows {
            assert!(row.rmse_m <= 1e-10, "step {}: rmse {}", row.step, row.rmse_m);
        }
    }

    #[test]
    fn ratio_column_is_ceil_arithmetic() {
        let traj = gen_trajectory(&SynthSpec {
            frames: 100,
            joints: 1,
            fps: 10.0,
            seed: 1,
            kind: MotionKind::SmoothWalk { accel_sigma: 1.0, cutoff_hz: 1.0 },
        })
        .unwrap();
        let rows = degradation_error_table(&traj, &[3, 7, 1], 4).unwrap();
        let steps: Vec<usize> = rows.iter().map(|r| r.step).collect();
        assert_eq!(steps, vec![1, 3, 7]);
        for row in &rows {
            let expected = 100usize.div_ceil(row.step) as f64 / 100.0;
            assert_eq!(row.control_point_ratio, expected);
        }
    }

    #[test]
    fn smooth_walk_rmse_is_nondecreasing_in_step() {
        let traj = gen_trajectory(&SynthSpec {
            frames: 128,
            joints: 1,
            fps: 10.0,
            seed: 7,
            kind: MotionKind::SmoothWalk { accel_sigma: 1.5, cutoff_hz: 1.0 },
        })
        .unwrap();
        let rows = degradation_error_table(&traj, &[1, 2, 4, 8, 16, 32], 4).unwrap();
        for pair in rows.windows(2) {
            assert!(
                pair[1].rmse_m >= pair[0].rmse_m,
                "step {} rmse {} < step {} rmse {}",
                pair[1].step,
                pair[1].rmse_m,
                pair[0].step,
                pair[0].rmse_m
            );
        }
        assert!(rows[0].rmse_m <= 1e-9);
    }

    #[test]
    fn bridge_error_zero_ratio_is_exact() {
        let traj = gen_trajectory(&SynthSpec {
            frames: 32,
            joints: 1,
            fps: 10.0,
            seed: 2,
            kind: MotionKind::Sinusoid {
                amplitude: 1.0,
                frequency_hz: 0.2,
                phase: 0.0,
                axis: Vec3::new(0.0, 1.0, 0.0),
            },
        })
        .unwrap();
        let row = bridge_error(&traj, MaskPolicy::Random, 0.0, 3).unwrap();
        assert_eq!(row.occluded_frames, 0);
        assert_eq!(row.rmse_occluded_m, 0.0);
        assert_eq!(row.rmse_all_m, 0.0);
    }
}
