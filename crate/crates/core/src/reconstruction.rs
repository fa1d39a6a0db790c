//! Curve-parameter resampling, the block-causal token mask, and gap
//! bridging through occluded frames.

use crate::degradation::Schedule;
use crate::error::{Error, Result};
use crate::fitting::{fit_smooth_chain, Trajectory};
use crate::geometry::{eval_chain, BezierChain, Vec3};
use crate::synth::FrameMask;

/// Evaluate a level's chain at the given target times.
///
/// Times must be non-decreasing and lie within the chain's span. Passing a
/// finer level's anchor times upsamples the chain to that level's length.
pub fn resample_level(level_chain: &BezierChain, target_times: &[f64]) -> Result<Vec<Vec3>> {
    let (t0, t1) = level_chain.time_span();
    for w in target_times.windows(2) {
        if w[1] < w[0] {
            return Err(Error::domain(format!(
                "target times must be non-decreasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    if let Some(&t) = target_times.iter().find(|&&t| !t.is_finite() || t < t0 || t > t1) {
        return Err(Error::domain(format!("target time {t} outside chain span [{t0}, {t1}]")));
    }
    target_times.iter().map(|&t| eval_chain(level_chain, t)).collect()
}

/// Role of a contiguous run of tokens in the mask layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// Per-frame conditioning tokens; always visible to everyone.
    Point,
    /// Motion tokens of one hierarchy level (1-based, coarse first).
    Motion { level: usize, step: usize },
}

/// A contiguous span of same-kind tokens in the mask layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenSpan {
    pub kind: TokenKind,
    pub start: usize,
    pub len: usize,
}

/// Boolean token-visibility matrix over the layout
/// `[point tokens] [level-1 tokens] ... [level-L tokens]`.
///
/// Row `r` may attend to column `c` iff `allowed[r][c]`. The matrix depends
/// only on the frame count and schedule, never on trajectory data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttentionMask {
    spans: Vec<TokenSpan>,
    allowed: Vec<Vec<bool>>,
}

impl AttentionMask {
    /// Total token count `N = T + sum of level sizes`.
    pub fn tokens(&self) -> usize {
        self.allowed.len()
    }

    pub fn spans(&self) -> &[TokenSpan] {
        &self.spans
    }

    pub fn is_allowed(&self, row: usize, col: usize) -> bool {
        self.allowed[row][col]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.allowed
    }

    pub fn row_visible_count(&self, row: usize) -> usize {
        self.allowed[row].iter().filter(|&&v| v).count()
    }
}

/// Build the block-causal mask for `T` point tokens and one token block per
/// schedule level of the given sizes.
///
/// Visibility rule: every token sees every point token; a motion token of
/// level `l` sees all motion tokens of levels `1..=l` (full attention within
/// its own level) and never any strictly finer level; point tokens see only
/// point tokens.
pub fn build_block_causal_mask(
    frames: usize,
    schedule: &Schedule,
    level_sizes: &[usize],
) -> Result<AttentionMask> {
    if level_sizes.len() != schedule.levels() {
        return Err(Error::shape(format!(
            "need one size per schedule level: {} levels, {} sizes",
            schedule.levels(),
            level_sizes.len()
        )));
    }
    for (l, (&s, &m)) in schedule.steps().iter().zip(level_sizes).enumerate() {
        let expected = frames.div_ceil(s);
        if m != expected {
            return Err(Error::domain(format!(
                "level {} (step {s}) must have ceil(T/s) = {expected} tokens, got {m}",
                l + 1
            )));
        }
    }

    let mut spans = vec![TokenSpan { kind: TokenKind::Point, start: 0, len: frames }];
    let mut offset = frames;
    for (l, (&step, &m)) in schedule.steps().iter().zip(level_sizes).enumerate() {
        spans.push(TokenSpan { kind: TokenKind::Motion { level: l + 1, step }, start: offset, len: m });
        offset += m;
    }
    let total = offset;

    let mut allowed = vec![vec![false; total]; total];
    for row in allowed.iter_mut() {
        for v in row.iter_mut().take(frames) {
            *v = true;
        }
    }
    // Motion rows additionally see every motion block up to their own level.
    for span in &spans[1..] {
        let visible_end = span.start + span.len;
        for row in allowed[span.start..visible_end].iter_mut() {
            for v in row[frames..visible_end].iter_mut() {
                *v = true;
            }
        }
    }
    Ok(AttentionMask { spans, allowed })
}

/// Fit a smooth chain through observed frames only and evaluate it at every
/// frame time, bridging occluded runs.
///
/// Observed frames are reproduced exactly. When an endpoint frame is
/// occluded, the nearest observed frame is promoted to the boundary anchor
/// and frames beyond it are extended linearly along the boundary tangent
/// (the natural fit has zero curvature there).
pub fn bridge_gaps(traj: &Trajectory, mask: &FrameMask) -> Result<Trajectory> {
    if mask.len() != traj.frames() {
        return Err(Error::shape(format!(
            "mask has {} entries for {} frames",
            mask.len(),
            traj.frames()
        )));
    }
    let observed = mask.observed_indices();
    if observed.len() < 2 {
        return Err(Error::insufficient(format!(
            "need at least 2 observed frames to bridge, got {}",
            observed.len()
        )));
    }
    if observed.len() == traj.frames() {
        return Ok(traj.clone());
    }

    let times: Vec<f64> = observed.iter().map(|&t| t as f64).collect();
    let (span_lo, span_hi) = (times[0], *times.last().unwrap());

    let mut columns: Vec<Vec<Vec3>> = Vec::with_capacity(traj.joints());
    for k in 0..traj.joints() {
        let observed_points: Vec<Vec3> = observed.iter().map(|&t| traj.position(t, k)).collect();
        let chain = fit_smooth_chain(&observed_points, &times)?;
        let column = (0..traj.frames())
            .map(|t| {
                let t = t as f64;
                if t < span_lo {
                    let v = crate::geometry::eval_chain_derivative(&chain, span_lo, 1)?;
                    Ok(observed_points[0] + v * (t - span_lo))
                } else if t > span_hi {
                    let v = crate::geometry::eval_chain_derivative(&chain, span_hi, 1)?;
                    Ok(*observed_points.last().unwrap() + v * (t - span_hi))
                } else {
                    eval_chain(&chain, t)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        columns.push(column);
    }
    let mut positions = vec![Vec::with_capacity(traj.joints()); traj.frames()];
    for (t, row) in positions.iter_mut().enumerate() {
        for column in &columns {
            row.push(column[t]);
        }
    }
    // Observed frames come back bitwise: chain anchors are stored.
    for &t in &observed {
        for (k, slot) in positions[t].iter_mut().enumerate() {
            *slot = traj.position(t, k);
        }
    }
    Trajectory::new(positions, traj.fps())
}
