//! Smooth cubic Bézier chain fitting through joint trajectories.
//!
//! Each joint trajectory is interpolated by one cubic segment per
//! consecutive frame pair. Enforcing matching second derivatives at every
//! interior anchor plus zero second derivative at both chain ends yields,
//! per coordinate axis, a tridiagonal linear system of size `T - 2` in the
//! interior curvatures, solved by the Thomas algorithm. The solved spline is
//! then converted to Bézier control points anchor by anchor.

use crate::error::{Error, Result};
use crate::geometry::{BezierChain, Vec3};

/// A joint-position sequence: `T` frames by `K` joints, plus the capture rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    positions: Vec<Vec<Vec3>>, // T x K
    fps: f64,
}

impl Trajectory {
    /// Validate and wrap a `T x K` position array.
    pub fn new(positions: Vec<Vec<Vec3>>, fps: f64) -> Result<Self> {
        if positions.len() < 2 {
            return Err(Error::insufficient(format!(
                "trajectory needs at least 2 frames, got {}",
                positions.len()
            )));
        }
        let k = positions[0].len();
        if k == 0 {
            return Err(Error::domain("trajectory needs at least 1 joint".to_string()));
        }
        for (t, row) in positions.iter().enumerate() {
            if row.len() != k {
                return Err(Error::shape(format!(
                    "frame {t} has {} joints, expected {k}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|p| !p.is_finite()) {
                return Err(Error::domain(format!("non-finite position at frame {t}, joint {j}")));
            }
        }
        if !fps.is_finite() || fps <= 0.0 {
            return Err(Error::domain(format!("fps must be positive and finite, got {fps}")));
        }
        Ok(Trajectory { positions, fps })
    }

    /// Build a trajectory from a position function of `(frame, joint)`.
    pub fn from_fn(frames: usize, joints: usize, fps: f64, f: impl Fn(usize, usize) -> Vec3) -> Result<Self> {
        let positions = (0..frames).map(|t| (0..joints).map(|k| f(t, k)).collect()).collect();
        Trajectory::new(positions, fps)
    }

    pub fn frames(&self) -> usize {
        self.positions.len()
    }

    pub fn joints(&self) -> usize {
        self.positions[0].len()
    }

    pub fn fps(&self) -> f64 {
        self.fps
    }

    pub fn position(&self, frame: usize, joint: usize) -> Vec3 {
        self.positions[frame][joint]
    }

    pub fn frame(&self, t: usize) -> &[Vec3] {
        &self.positions[t]
    }

    /// Positions of one joint across all frames.
    pub fn joint_track(&self, joint: usize) -> Vec<Vec3> {
        self.positions.iter().map(|row| row[joint]).collect()
    }

    pub fn rows(&self) -> &[Vec<Vec3>] {
        &self.positions
    }
}

/// A tridiagonal linear system `A x = rhs` with scalar coefficients.
#[derive(Debug, Clone)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,   // n - 1 entries, below the diagonal
    pub diag: Vec<f64>,  // n entries
    pub sup: Vec<f64>,   // n - 1 entries, above the diagonal
    pub rhs: Vec<f64>,   // n entries
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::insufficient("tridiagonal system needs n >= 1".to_string()));
        }
        if sub.len() + 1 != n || sup.len() + 1 != n || rhs.len() != n {
            return Err(Error::shape(format!(
                "tridiagonal sizes must be (n-1, n, n-1, n), got ({}, {}, {}, {})",
                sub.len(),
                n,
                sup.len(),
                rhs.len()
            )));
        }
        Ok(TridiagonalSystem { sub, diag, sup, rhs })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor requires n >= 1
    }
}

/// Solve a tridiagonal system by forward elimination and back substitution
/// (the Thomas algorithm).
///
/// Returns a singular-system error when a pivot vanishes during elimination.
pub fn solve_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    let n = sys.len();
    let scale = sys
        .diag
        .iter()
        .chain(sys.sub.iter())
        .chain(sys.sup.iter())
        .fold(0.0_f64, |m, &v| m.max(v.abs()))
        .max(1.0);
    let pivot_floor = 1e-14 * scale;

    let mut c = vec![0.0; n]; // modified super-diagonal
    let mut d = vec![0.0; n]; // modified rhs

    if sys.diag[0].abs() < pivot_floor {
        return Err(Error::SingularSystem { row: 0 });
    }
    if n > 1 {
        c[0] = sys.sup[0] / sys.diag[0];
    }
    d[0] = sys.rhs[0] / sys.diag[0];

    for i in 1..n {
        let denom = sys.diag[i] - sys.sub[i - 1] * c[i - 1];
        if denom.abs() < pivot_floor {
            return Err(Error::SingularSystem { row: i });
        }
        if i < n - 1 {
            c[i] = sys.sup[i] / denom;
        }
        d[i] = (sys.rhs[i] - sys.sub[i - 1] * d[i - 1]) / denom;
    }

    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

fn validate_times(count: usize, times: &[f64]) -> Result<()> {
    if times.len() != count {
        return Err(Error::shape(format!(
            "expected {count} times for {count} frames, got {}",
            times.len()
        )));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::domain("non-finite frame time".to_string()));
    }
    for w in times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::domain(format!(
                "frame times must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Fit a smooth cubic Bézier chain through one joint's positions.
///
/// The chain interpolates every input point exactly; interior anchors have
/// matching second derivatives across segments (which, for uniformly spaced
/// times, makes the backward and forward controls exact mirror images about
/// the anchor), and the second derivative vanishes at both chain ends.
pub fn fit_smooth_chain(points: &[Vec3], times: &[f64]) -> Result<BezierChain> {
    let n = points.len();
    if n < 2 {
        return Err(Error::insufficient(format!("need at least 2 frames to fit, got {n}")));
    }
    validate_times(n, times)?;
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::domain(format!("non-finite position at frame {i}")));
    }

    let h: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();

    // Second derivatives ("moments") at each anchor; natural boundary keeps
    // the first and last at zero, leaving T - 2 interior unknowns per axis.
    let mut moments = vec![Vec3::ZERO; n];
    if n > 2 {
        let m = n - 2;
        let mut diag = Vec::with_capacity(m);
        let mut off = Vec::with_capacity(m.saturating_sub(1));
        for j in 0..m {
            diag.push(2.0 * (h[j] + h[j + 1]));
            if j + 1 < m {
                off.push(h[j + 1]);
            }
        }
        for axis in 0..3 {
            let coord = |v: Vec3| match axis {
                0 => v.x,
                1 => v.y,
                _ => v.z,
            };
            let rhs: Vec<f64> = (0..m)
                .map(|j| {
                    let i = j + 1;
                    6.0 * ((coord(points[i + 1]) - coord(points[i])) / h[i]
                        - (coord(points[i]) - coord(points[i - 1])) / h[i - 1])
                })
                .collect();
            let sys = TridiagonalSystem::new(off.clone(), diag.clone(), off.clone(), rhs)?;
            let sol = solve_tridiagonal(&sys)?;
            for (j, v) in sol.into_iter().enumerate() {
                match axis {
                    0 => moments[j + 1].x = v,
                    1 => moments[j + 1].y = v,
                    _ => moments[j + 1].z = v,
                }
            }
        }
    }

    // Spline slope at the left/right end of each segment, then the Bézier
    // controls at one third of the tangent step.
    let mut fwd = vec![Vec3::ZERO; n];
    let mut back = vec![Vec3::ZERO; n];
    for i in 0..n - 1 {
        let hi = h[i];
        let chord = (points[i + 1] - points[i]) / hi;
        let slope_left = chord - (moments[i] * 2.0 + moments[i + 1]) * (hi / 6.0);
        let slope_right = chord + (moments[i] + moments[i + 1] * 2.0) * (hi / 6.0);
        fwd[i] = points[i] + slope_left * (hi / 3.0);
        back[i + 1] = points[i + 1] - slope_right * (hi / 3.0);
    }
    // Unused boundary controls are stored as mirrors so packing stays uniform.
    back[0] = points[0] * 2.0 - fwd[0];
    fwd[n - 1] = points[n - 1] * 2.0 - back[n - 1];

    BezierChain::new(times.to_vec(), points.to_vec(), back, fwd)
}

/// Fit every joint of a trajectory independently at uniform integer frame
/// times `0, 1, ..., T-1`.
pub fn fit_trajectory(traj: &Trajectory) -> Result<Vec<BezierChain>> {
    let times: Vec<f64> = (0..traj.frames()).map(|t| t as f64).collect();
    (0..traj.joints())
        .map(|k| fit_smooth_chain(&traj.joint_track(k), &times))
        .collect()
}
