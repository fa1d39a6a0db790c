//! Motion evaluation metrics: RMSE, MPJPE, acceleration error, and the
//! multi-level representation loss.
//!
//! MPJPE is computed without root alignment by default; callers wanting a
//! root-relative comparison subtract the root joint from both inputs first
//! (see [`root_align`]). Accelerations use second central finite differences
//! at the trajectory's frame rate.

use serde::{Deserialize, Serialize};

use crate::degradation::MultiLevelMotion;
use crate::error::{Error, Result};
use crate::fitting::Trajectory;

/// Scalar metrics plus per-joint breakdowns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    /// Root-mean-square per-joint position error, meters.
    pub rmse_m: f64,
    /// Mean per-joint position error, millimeters.
    pub mpjpe_mm: f64,
    /// Mean per-joint acceleration error, cm/s^2.
    pub accel_err_cm_s2: f64,
    pub per_joint_rmse_m: Vec<f64>,
    pub per_joint_mpjpe_mm: Vec<f64>,
    pub per_joint_accel_err_cm_s2: Vec<f64>,
}

impl MetricReport {
    /// Compute all trajectory metrics between a prediction and ground truth.
    pub fn compute(pred: &Trajectory, gt: &Trajectory) -> Result<Self> {
        Ok(MetricReport {
            rmse_m: rmse(pred, gt)?,
            mpjpe_mm: mpjpe(pred, gt)?,
            accel_err_cm_s2: accel_error(pred, gt)?,
            per_joint_rmse_m: per_joint(pred, gt, rmse_single_joint)?,
            per_joint_mpjpe_mm: per_joint(pred, gt, mpjpe_single_joint)?,
            per_joint_accel_err_cm_s2: per_joint(pred, gt, accel_single_joint)?,
        })
    }

    /// Header plus one data row, '.' decimal separator, '\n' line endings.
    pub fn to_csv(&self) -> String {
        let mut header = String::from("rmse_m,mpjpe_mm,accel_err_cm_s2");
        let mut row = format!("{},{},{}", self.rmse_m, self.mpjpe_mm, self.accel_err_cm_s2);
        for (prefix, values) in [
            ("rmse_m_j", &self.per_joint_rmse_m),
            ("mpjpe_mm_j", &self.per_joint_mpjpe_mm),
            ("accel_err_cm_s2_j", &self.per_joint_accel_err_cm_s2),
        ] {
            for (k, v) in values.iter().enumerate() {
                header.push_str(&format!(",{prefix}{k}"));
                row.push_str(&format!(",{v}"));
            }
        }
        format!("{header}\n{row}\n")
    }
}

fn check_shapes(a: &Trajectory, b: &Trajectory) -> Result<()> {
    if a.frames() != b.frames() || a.joints() != b.joints() {
        return Err(Error::shape(format!(
            "trajectories differ: {}x{} vs {}x{}",
            a.frames(),
            a.joints(),
            b.frames(),
            b.joints()
        )));
    }
    Ok(())
}

fn per_joint(
    pred: &Trajectory,
    gt: &Trajectory,
    f: impl Fn(&Trajectory, &Trajectory, usize) -> f64,
) -> Result<Vec<f64>> {
    check_shapes(pred, gt)?;
    Ok((0..pred.joints()).map(|k| f(pred, gt, k)).collect())
}

fn rmse_single_joint(a: &Trajectory, b: &Trajectory, k: usize) -> f64 {
    let sum: f64 = (0..a.frames())
        .map(|t| (a.position(t, k) - b.position(t, k)).norm_squared())
        .sum();
    (sum / a.frames() as f64).sqrt()
}

fn mpjpe_single_joint(a: &Trajectory, b: &Trajectory, k: usize) -> f64 {
    let sum: f64 = (0..a.frames()).map(|t| a.position(t, k).distance(b.position(t, k))).sum();
    sum / a.frames() as f64 * 1000.0
}

fn accel_single_joint(a: &Trajectory, b: &Trajectory, k: usize) -> f64 {
    let fps2 = a.fps() * a.fps();
    let frames = a.frames();
    let sum: f64 = (1..frames - 1)
        .map(|t| {
            let aa = (a.position(t + 1, k) - a.position(t, k) * 2.0 + a.position(t - 1, k)) * fps2;
            let ab = (b.position(t + 1, k) - b.position(t, k) * 2.0 + b.position(t - 1, k)) * fps2;
            (aa - ab).norm()
        })
        .sum();
    sum / (frames - 2) as f64 * 100.0
}

/// Root-mean-square position error in meters: the square root of the mean,
/// over all frames and joints, of the squared Euclidean per-joint distance.
pub fn rmse(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    check_shapes(a, b)?;
    let mut sum = 0.0;
    for t in 0..a.frames() {
        for k in 0..a.joints() {
            sum += (a.position(t, k) - b.position(t, k)).norm_squared();
        }
    }
    Ok((sum / (a.frames() * a.joints()) as f64).sqrt())
}

/// RMSE restricted to a subset of frames (all joints).
pub fn rmse_over_frames(a: &Trajectory, b: &Trajectory, frames: &[usize]) -> Result<f64> {
    check_shapes(a, b)?;
    if frames.is_empty() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for &t in frames {
        if t >= a.frames() {
            return Err(Error::domain(format!("frame index {t} out of range")));
        }
        for k in 0..a.joints() {
            sum += (a.position(t, k) - b.position(t, k)).norm_squared();
        }
    }
    Ok((sum / (frames.len() * a.joints()) as f64).sqrt())
}

/// Maximum per-joint Euclidean error over all frames, meters.
pub fn max_error(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    check_shapes(a, b)?;
    let mut max = 0.0_f64;
    for t in 0..a.frames() {
        for k in 0..a.joints() {
            max = max.max(a.position(t, k).distance(b.position(t, k)));
        }
    }
    Ok(max)
}

/// Mean per-joint position error in millimeters, without root alignment.
pub fn mpjpe(pred: &Trajectory, gt: &Trajectory) -> Result<f64> {
    check_shapes(pred, gt)?;
    let mut sum = 0.0;
    for t in 0..pred.frames() {
        for k in 0..pred.joints() {
            sum += pred.position(t, k).distance(gt.position(t, k));
        }
    }
    Ok(sum / (pred.frames() * pred.joints()) as f64 * 1000.0)
}

/// Subtract the root joint (index 0) from every joint, per frame.
pub fn root_align(traj: &Trajectory) -> Result<Trajectory> {
    let positions = traj
        .rows()
        .iter()
        .map(|row| {
            let root = row[0];
            row.iter().map(|p| *p - root).collect()
        })
        .collect();
    Trajectory::new(positions, traj.fps())
}

/// Mean per-joint acceleration error in cm/s^2.
///
/// Accelerations are second central differences
/// `(p[t+1] - 2 p[t] + p[t-1]) * fps^2`; the metric averages the Euclidean
/// difference between predicted and ground-truth accelerations over the
/// `T - 2` interior frames and all joints.
pub fn accel_error(pred: &Trajectory, gt: &Trajectory) -> Result<f64> {
    check_shapes(pred, gt)?;
    if pred.frames() < 3 {
        return Err(Error::insufficient(format!(
            "acceleration needs at least 3 frames, got {}",
            pred.frames()
        )));
    }
    let fps2 = gt.fps() * gt.fps();
    let mut sum = 0.0;
    for t in 1..pred.frames() - 1 {
        for k in 0..pred.joints() {
            let ap = (pred.position(t + 1, k) - pred.position(t, k) * 2.0 + pred.position(t - 1, k)) * fps2;
            let ag = (gt.position(t + 1, k) - gt.position(t, k) * 2.0 + gt.position(t - 1, k)) * fps2;
            sum += (ap - ag).norm();
        }
    }
    Ok(sum / ((pred.frames() - 2) * pred.joints()) as f64 * 100.0)
}

/// Multi-level representation distance: per level, the squared Frobenius
/// norm of the difference divided by that level's anchor count, summed over
/// levels.
pub fn representation_loss(pred: &MultiLevelMotion, gt: &MultiLevelMotion) -> Result<f64> {
    if pred.schedule != gt.schedule {
        return Err(Error::shape("multi-level schedules differ".to_string()));
    }
    if pred.levels.len() != gt.levels.len() {
        return Err(Error::shape("multi-level level counts differ".to_string()));
    }
    let mut total = 0.0;
    for (lp, lg) in pred.levels.iter().zip(&gt.levels) {
        if lp.anchors() != lg.anchors() || lp.joints() != lg.joints() {
            return Err(Error::shape(format!(
                "level shapes differ: {}x{} vs {}x{}",
                lp.anchors(),
                lp.joints(),
                lg.anchors(),
                lg.joints()
            )));
        }
        let mut frob_sq = 0.0;
        for (rp, rg) in lp.data.iter().zip(&lg.data) {
            for (vp, vg) in rp.iter().zip(rg) {
                for (a, b) in vp.iter().zip(vg) {
                    let d = a - b;
                    frob_sq += d * d;
                }
            }
        }
        total += frob_sq / lp.anchors() as f64;
    }
    Ok(total)
}
