//! Trajectory-aware degradation of a finest Bézier chain.
//!
//! Degrading with step `s` keeps every `s`-th anchor (the last one forced to
//! the final frame), reuses the finest chain's unit tangent direction at each
//! kept anchor, and re-optimizes the two control lengths of every degraded
//! segment by least squares against dense samples of the finest curve. The
//! residual is affine in the two lengths, so the minimizer comes from 2x2
//! normal equations in closed form.

use crate::error::{Error, Result};
use crate::fitting::{fit_trajectory, Trajectory};
use crate::geometry::{eval_chain, BezierChain, Vec3};

/// Offsets below this norm count as a stationary (degenerate) anchor.
const DEGENERATE_EPS: f64 = 1e-12;

/// The coarse-to-fine hierarchy of step sizes: strictly decreasing, ending
/// in 1 so the finest level always reproduces every frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    steps: Vec<usize>,
}

impl Schedule {
    pub fn new(steps: Vec<usize>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::domain("schedule must have at least one step".to_string()));
        }
        for w in steps.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::domain(format!(
                    "schedule steps must be strictly decreasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if *steps.last().unwrap() != 1 {
            return Err(Error::domain(format!(
                "schedule must end with step 1, got {}",
                steps.last().unwrap()
            )));
        }
        if steps[0] == 0 {
            return Err(Error::domain("schedule steps must be positive".to_string()));
        }
        Ok(Schedule { steps })
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn levels(&self) -> usize {
        self.steps.len()
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { steps: vec![32, 16, 8, 1] }
    }
}

/// Signed control lengths of one degraded segment, in meters along the
/// shared tangent line. Positive values place the forward control ahead of
/// its anchor along the motion direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentLengths {
    pub ell_fwd: f64,
    pub ell_back: f64,
}

/// A unit motion-direction tangent at an anchor, or the zero vector when the
/// anchor is stationary and no chord fallback exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnchorTangent {
    pub direction: Vec3,
    pub degenerate: bool,
}

/// One level of the packed hierarchy: `M x K x 9` values, each anchor row
/// laid out as anchor, backward control, forward control.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionLevel {
    pub step: usize,
    pub anchor_times: Vec<f64>,
    pub data: Vec<Vec<[f64; 9]>>,
}

impl MotionLevel {
    pub fn anchors(&self) -> usize {
        self.data.len()
    }

    pub fn joints(&self) -> usize {
        self.data.first().map_or(0, |row| row.len())
    }
}

/// The packed multi-level motion representation: one level per schedule
/// step, ordered coarse to fine.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLevelMotion {
    pub schedule: Schedule,
    pub levels: Vec<MotionLevel>,
}

/// Anchor indices kept when degrading `T` frames with step `s`: exactly
/// `ceil(T / s)` indices `0, s, 2s, ...` with the final one replaced by
/// `T - 1`.
pub fn select_anchor_indices(frames: usize, step: usize) -> Result<Vec<usize>> {
    if frames < 2 {
        return Err(Error::insufficient(format!("need at least 2 frames, got {frames}")));
    }
    if step == 0 || step >= frames {
        return Err(Error::domain(format!(
            "step must satisfy 1 <= s <= T-1 (T={frames}), got {step}"
        )));
    }
    let count = frames.div_ceil(step);
    let mut indices: Vec<usize> = (0..count).map(|i| i * step).collect();
    *indices.last_mut().unwrap() = frames - 1;
    Ok(indices)
}

/// Unit motion-direction tangent at a finest-chain anchor.
///
/// Defined as the normalized direction from the backward control toward the
/// anchor (by the mirror constraint, equal to anchor toward forward control).
/// A stationary anchor falls back to the chord toward the neighboring
/// anchor; if that is also degenerate the zero vector is returned with the
/// degenerate flag set.
pub fn extract_unit_tangent(chain: &BezierChain, anchor_index: usize) -> Result<AnchorTangent> {
    let m = chain.len();
    if anchor_index >= m {
        return Err(Error::domain(format!(
            "anchor index {anchor_index} out of range (chain has {m} anchors)"
        )));
    }
    let anchor = chain.anchors()[anchor_index];
    let offset = anchor - chain.back_controls()[anchor_index];
    if let Some(dir) = offset.normalized(DEGENERATE_EPS) {
        return Ok(AnchorTangent { direction: dir, degenerate: false });
    }
    let chord = if anchor_index + 1 < m {
        chain.anchors()[anchor_index + 1] - anchor
    } else {
        anchor - chain.anchors()[anchor_index - 1]
    };
    match chord.normalized(DEGENERATE_EPS) {
        Some(dir) => Ok(AnchorTangent { direction: dir, degenerate: false }),
        None => Ok(AnchorTangent { direction: Vec3::ZERO, degenerate: true }),
    }
}

/// Dense samples of the finest chain over `[t_lo, t_hi]`, uniform in time,
/// with `samples_per_frame` points per original frame interval plus both
/// endpoints. Returns `(u, target)` pairs.
fn sample_targets(
    finest: &BezierChain,
    i_lo: usize,
    i_hi: usize,
    samples_per_frame: usize,
) -> Result<Vec<(f64, Vec3)>> {
    let t_lo = finest.anchor_times()[i_lo];
    let t_hi = finest.anchor_times()[i_hi];
    let count = (i_hi - i_lo) * samples_per_frame;
    let mut out = Vec::with_capacity(count + 1);
    for j in 0..=count {
        let u = j as f64 / count as f64;
        let t = t_lo + (t_hi - t_lo) * u;
        out.push((u, eval_chain(finest, t.min(t_hi))?));
    }
    Ok(out)
}

/// Closed-form least-squares control lengths for one degraded segment.
///
/// The degraded curve between anchors `i_lo` and `i_hi` is affine in the two
/// unknown lengths, so the sampled objective is a 2x2 quadratic solved by its
/// normal equations. A degenerate (zero) tangent drops its unknown, which
/// falls back to one third of the chord length, the linear-segment default.
pub fn fit_segment_lengths(
    finest: &BezierChain,
    i_lo: usize,
    i_hi: usize,
    d_lo: Vec3,
    d_hi: Vec3,
    samples_per_frame: usize,
) -> Result<SegmentLengths> {
    if i_lo >= i_hi || i_hi >= finest.len() {
        return Err(Error::domain(format!(
            "anchor indices must satisfy i_lo < i_hi < M, got ({i_lo}, {i_hi}) with M={}",
            finest.len()
        )));
    }
    if samples_per_frame == 0 {
        return Err(Error::domain("samples_per_frame must be >= 1".to_string()));
    }

    let p0 = finest.anchors()[i_lo];
    let p3 = finest.anchors()[i_hi];
    let chord = p0.distance(p3);
    let default_len = chord / 3.0;

    // Accumulate the normal equations of
    //   r(u) = base(u) + a(u) ell_fwd d_lo - b(u) ell_back d_hi - Y(u),
    // with a(u) = 3(1-u)^2 u and b(u) = 3(1-u) u^2.
    let mut a11 = 0.0;
    let mut a12 = 0.0;
    let mut a22 = 0.0;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for (u, target) in sample_targets(finest, i_lo, i_hi, samples_per_frame)? {
        let mu = 1.0 - u;
        let a = 3.0 * mu * mu * u;
        let b = 3.0 * mu * u * u;
        let base = p0 * (mu * mu * (1.0 + 2.0 * u)) + p3 * (u * u * (3.0 - 2.0 * u));
        let g = target - base;
        a11 += a * a * d_lo.dot(d_lo);
        a12 -= a * b * d_lo.dot(d_hi);
        a22 += b * b * d_hi.dot(d_hi);
        b1 += a * d_lo.dot(g);
        b2 -= b * d_hi.dot(g);
    }

    let lo_degenerate = a11 <= DEGENERATE_EPS;
    let hi_degenerate = a22 <= DEGENERATE_EPS;
    let (ell_fwd, ell_back) = match (lo_degenerate, hi_degenerate) {
        (true, true) => (default_len, default_len),
        (true, false) => (default_len, (b2 - a12 * default_len) / a22),
        (false, true) => ((b1 - a12 * default_len) / a11, default_len),
        (false, false) => {
            let det = a11 * a22 - a12 * a12;
            if det <= DEGENERATE_EPS * a11 * a22 {
                // Only reachable with a pathological sample set; fall back to
                // the linear-segment default on both sides.
                (default_len, default_len)
            } else {
                ((a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det)
            }
        }
    };

    if !ell_fwd.is_finite() || !ell_back.is_finite() {
        return Err(Error::domain("non-finite segment lengths from least squares".to_string()));
    }
    Ok(SegmentLengths { ell_fwd, ell_back })
}

/// Degrade a finest chain to step `s`: keep the selected anchors, reuse the
/// finest tangent directions, and refit every segment's control lengths.
///
/// The result is tangent-direction continuous at interior anchors by
/// construction (shared direction, independent lengths on each side).
pub fn degrade_chain(finest: &BezierChain, step: usize, samples_per_frame: usize) -> Result<BezierChain> {
    let indices = select_anchor_indices(finest.len(), step)?;
    let m = indices.len();

    let anchors: Vec<Vec3> = indices.iter().map(|&i| finest.anchors()[i]).collect();
    let times: Vec<f64> = indices.iter().map(|&i| finest.anchor_times()[i]).collect();
    let tangents: Vec<AnchorTangent> = indices
        .iter()
        .map(|&i| extract_unit_tangent(finest, i))
        .collect::<Result<_>>()?;

    let mut fwd = vec![Vec3::ZERO; m];
    let mut back = vec![Vec3::ZERO; m];
    for i in 0..m - 1 {
        let lengths = fit_segment_lengths(
            finest,
            indices[i],
            indices[i + 1],
            tangents[i].direction,
            tangents[i + 1].direction,
            samples_per_frame,
        )?;
        fwd[i] = anchors[i] + tangents[i].direction * lengths.ell_fwd;
        back[i + 1] = anchors[i + 1] - tangents[i + 1].direction * lengths.ell_back;
    }
    back[0] = anchors[0] * 2.0 - fwd[0];
    fwd[m - 1] = anchors[m - 1] * 2.0 - back[m - 1];

    BezierChain::new(times, anchors, back, fwd)
}

/// Pack per-joint chains sharing anchor times into one `M x K x 9` level.
pub fn pack_level(step: usize, chains: &[BezierChain]) -> Result<MotionLevel> {
    let first = chains.first().ok_or_else(|| Error::domain("no chains to pack".to_string()))?;
    let times = first.anchor_times().to_vec();
    for (k, c) in chains.iter().enumerate() {
        if c.anchor_times() != times.as_slice() {
            return Err(Error::shape(format!("joint {k} has mismatched anchor times")));
        }
    }
    let m = first.len();
    let data = (0..m)
        .map(|i| {
            chains
                .iter()
                .map(|c| {
                    let a = c.anchors()[i];
                    let b = c.back_controls()[i];
                    let f = c.fwd_controls()[i];
                    [a.x, a.y, a.z, b.x, b.y, b.z, f.x, f.y, f.z]
                })
                .collect()
        })
        .collect();
    Ok(MotionLevel { step, anchor_times: times, data })
}

/// Unpack one level back into per-joint chains.
pub fn unpack_level(level: &MotionLevel) -> Result<Vec<BezierChain>> {
    let k = level.joints();
    (0..k)
        .map(|j| {
            let mut anchors = Vec::with_capacity(level.anchors());
            let mut back = Vec::with_capacity(level.anchors());
            let mut fwd = Vec::with_capacity(level.anchors());
            for row in &level.data {
                let v = row[j];
                anchors.push(Vec3::new(v[0], v[1], v[2]));
                back.push(Vec3::new(v[3], v[4], v[5]));
                fwd.push(Vec3::new(v[6], v[7], v[8]));
            }
            BezierChain::new(level.anchor_times.clone(), anchors, back, fwd)
        })
        .collect()
}

/// Degrade already-fitted finest chains for every schedule step and pack the
/// hierarchy. The step-1 level packs the finest chains themselves.
pub fn multilevel_from_finest(
    finest: &[BezierChain],
    schedule: &Schedule,
    samples_per_frame: usize,
) -> Result<MultiLevelMotion> {
    let levels = schedule
        .steps()
        .iter()
        .map(|&s| {
            if s == 1 {
                pack_level(1, finest)
            } else {
                let degraded: Vec<BezierChain> = finest
                    .iter()
                    .map(|c| degrade_chain(c, s, samples_per_frame))
                    .collect::<Result<_>>()?;
                pack_level(s, &degraded)
            }
        })
        .collect::<Result<_>>()?;
    Ok(MultiLevelMotion { schedule: schedule.clone(), levels })
}

/// Fit the finest chain per joint, degrade it for each schedule step, and
/// pack every level as `M x K x 9`.
pub fn build_multilevel(
    traj: &Trajectory,
    schedule: &Schedule,
    samples_per_frame: usize,
) -> Result<MultiLevelMotion> {
    if schedule.steps()[0] >= traj.frames() {
        return Err(Error::domain(format!(
            "coarsest step {} must be below T={}",
            schedule.steps()[0],
            traj.frames()
        )));
    }
    let finest = fit_trajectory(traj)?;
    multilevel_from_finest(&finest, schedule, samples_per_frame)
}
