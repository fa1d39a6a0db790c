//! Cubic Bézier segment and chain primitives.
//!
//! A [`BezierChain`] is a sequence of cubic segments sharing endpoints
//! (anchors). Each anchor carries a backward and a forward control point;
//! segment `i` runs from anchor `i` to anchor `i+1` using anchor `i`'s
//! forward control and anchor `i+1`'s backward control. Evaluation uses the
//! Bernstein polynomial form; de Casteljau subdivision is kept as a test
//! oracle only.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 3D point or vector in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction, or `None` if the norm is below `eps`.
    pub fn normalized(self, eps: f64) -> Option<Vec3> {
        let n = self.norm();
        if n < eps {
            None
        } else {
            Some(self / n)
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// One cubic Bézier segment over a frame-time interval.
///
/// `c1` is the outgoing control of the start anchor and `c2` the incoming
/// control of the end anchor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicSegment {
    pub p0: Vec3,
    pub c1: Vec3,
    pub c2: Vec3,
    pub p3: Vec3,
    pub t_start: f64,
    pub t_end: f64,
}

impl CubicSegment {
    pub fn new(p0: Vec3, c1: Vec3, c2: Vec3, p3: Vec3, t_start: f64, t_end: f64) -> Result<Self> {
        if !t_start.is_finite() || !t_end.is_finite() || t_end <= t_start {
            return Err(Error::domain(format!(
                "segment time span must satisfy t_end > t_start, got [{t_start}, {t_end}]"
            )));
        }
        for (name, p) in [("p0", p0), ("c1", c1), ("c2", c2), ("p3", p3)] {
            if !p.is_finite() {
                return Err(Error::domain(format!("segment point {name} is not finite")));
            }
        }
        Ok(CubicSegment { p0, c1, c2, p3, t_start, t_end })
    }

    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }
}

fn check_unit_interval(u: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("curve parameter u={u} outside [0, 1]")));
    }
    Ok(())
}

/// Evaluate the segment at curve parameter `u` in `[0, 1]`.
///
/// Uses the cubic Bernstein combination of `(p0, c1, c2, p3)`; `u = 0` and
/// `u = 1` return the anchors exactly.
pub fn eval_segment(seg: &CubicSegment, u: f64) -> Result<Vec3> {
    check_unit_interval(u)?;
    let mu = 1.0 - u;
    let mu2 = mu * mu;
    let u2 = u * u;
    Ok(seg.p0 * (mu2 * mu)
        + seg.c1 * (3.0 * mu2 * u)
        + seg.c2 * (3.0 * mu * u2)
        + seg.p3 * (u2 * u))
}

/// First or second derivative of the segment with respect to `u` (not wall
/// time).
///
/// `order` must be 1 or 2.
pub fn eval_segment_derivative(seg: &CubicSegment, u: f64, order: u32) -> Result<Vec3> {
    check_unit_interval(u)?;
    let mu = 1.0 - u;
    match order {
        1 => Ok(((seg.c1 - seg.p0) * (mu * mu)
            + (seg.c2 - seg.c1) * (2.0 * mu * u)
            + (seg.p3 - seg.c2) * (u * u))
            * 3.0),
        2 => Ok(((seg.c2 - seg.c1 * 2.0 + seg.p0) * mu + (seg.p3 - seg.c2 * 2.0 + seg.c1) * u)
            * 6.0),
        _ => Err(Error::domain(format!("derivative order must be 1 or 2, got {order}"))),
    }
}

/// A chain of cubic segments through anchors at strictly increasing times.
///
/// Each anchor stores one backward and one forward control point. The first
/// anchor's backward control and the last anchor's forward control are not
/// used by segment evaluation; they are stored as mirror images of their
/// counterparts so every anchor packs to the same 9 values.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierChain {
    anchor_times: Vec<f64>,
    anchors: Vec<Vec3>,
    back_controls: Vec<Vec3>,
    fwd_controls: Vec<Vec3>,
}

impl BezierChain {
    /// Build a chain, validating that every list has the same length `M >= 2`
    /// and that anchor times are strictly increasing and finite.
    pub fn new(
        anchor_times: Vec<f64>,
        anchors: Vec<Vec3>,
        back_controls: Vec<Vec3>,
        fwd_controls: Vec<Vec3>,
    ) -> Result<Self> {
        let m = anchor_times.len();
        if m < 2 {
            return Err(Error::insufficient(format!("chain needs at least 2 anchors, got {m}")));
        }
        if anchors.len() != m || back_controls.len() != m || fwd_controls.len() != m {
            return Err(Error::shape(format!(
                "chain lists must share length: times={m}, anchors={}, back={}, fwd={}",
                anchors.len(),
                back_controls.len(),
                fwd_controls.len()
            )));
        }
        if anchor_times.iter().any(|t| !t.is_finite()) {
            return Err(Error::domain("non-finite anchor time".to_string()));
        }
        for w in anchor_times.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::domain(format!(
                    "anchor times must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for (name, list) in
            [("anchors", &anchors), ("back_controls", &back_controls), ("fwd_controls", &fwd_controls)]
        {
            if list.iter().any(|p| !p.is_finite()) {
                return Err(Error::domain(format!("non-finite point in {name}")));
            }
        }
        Ok(BezierChain { anchor_times, anchors, back_controls, fwd_controls })
    }

    /// Number of anchors `M`.
    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid chain always has >= 2 anchors
    }

    /// Number of cubic segments, `M - 1`.
    pub fn segment_count(&self) -> usize {
        self.anchors.len() - 1
    }

    pub fn anchor_times(&self) -> &[f64] {
        &self.anchor_times
    }

    pub fn anchors(&self) -> &[Vec3] {
        &self.anchors
    }

    pub fn back_controls(&self) -> &[Vec3] {
        &self.back_controls
    }

    pub fn fwd_controls(&self) -> &[Vec3] {
        &self.fwd_controls
    }

    pub fn time_span(&self) -> (f64, f64) {
        (self.anchor_times[0], *self.anchor_times.last().unwrap())
    }

    /// Assemble segment `i`, running from anchor `i` to anchor `i + 1`.
    pub fn segment(&self, i: usize) -> Result<CubicSegment> {
        if i >= self.segment_count() {
            return Err(Error::domain(format!(
                "segment index {i} out of range (chain has {} segments)",
                self.segment_count()
            )));
        }
        CubicSegment::new(
            self.anchors[i],
            self.fwd_controls[i],
            self.back_controls[i + 1],
            self.anchors[i + 1],
            self.anchor_times[i],
            self.anchor_times[i + 1],
        )
    }
}

/// Map a global frame-time to `(segment_index, u)`.
///
/// When `t` equals an interior anchor time the later segment is chosen
/// (`u = 0`); `t` equal to the final time returns the last segment with
/// `u = 1`.
pub fn segment_of_time(chain: &BezierChain, t: f64) -> Result<(usize, f64)> {
    let times = chain.anchor_times();
    let (t0, t1) = chain.time_span();
    if !t.is_finite() || t < t0 || t > t1 {
        return Err(Error::domain(format!("time {t} outside chain span [{t0}, {t1}]")));
    }
    if t == t1 {
        return Ok((chain.segment_count() - 1, 1.0));
    }
    // Largest i with times[i] <= t; partition_point counts entries <= t.
    let i = times.partition_point(|&a| a <= t) - 1;
    let u = (t - times[i]) / (times[i + 1] - times[i]);
    Ok((i, u))
}

/// Evaluate the chain at global frame-time `t`.
pub fn eval_chain(chain: &BezierChain, t: f64) -> Result<Vec3> {
    let (i, u) = segment_of_time(chain, t)?;
    eval_segment(&chain.segment(i)?, u)
}

/// First or second derivative of the chain with respect to global time,
/// applying the chain rule with the segment duration.
pub fn eval_chain_derivative(chain: &BezierChain, t: f64, order: u32) -> Result<Vec3> {
    let (i, u) = segment_of_time(chain, t)?;
    let seg = chain.segment(i)?;
    let d = eval_segment_derivative(&seg, u, order)?;
    let h = seg.duration();
    match order {
        1 => Ok(d / h),
        2 => Ok(d / (h * h)),
        _ => unreachable!("order validated by eval_segment_derivative"),
    }
}
