//! Synthetic trajectory generation and frame-drop policies.
//!
//! Generators are pure functions of their spec: the same seed always yields
//! bitwise-identical output. Analytic kinds (line, sinusoid, circle,
//! lissajous, polynomial) share one closed-form position function that tests
//! can query directly; the smooth-walk kind integrates seeded Gaussian
//! accelerations twice and low-pass filters the result.
//!
//! Seeding uses ChaCha8; reproducibility is guaranteed across runs of this
//! crate, not across other implementations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitting::Trajectory;
use crate::geometry::Vec3;

/// Spacing between joints of analytic kinds, meters along z.
const JOINT_OFFSET_M: f64 = 0.05;

/// Per-frame observed/occluded flags; `true` means the frame was observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameMask {
    pub observed: Vec<bool>,
}

impl FrameMask {
    pub fn all_observed(frames: usize) -> Self {
        FrameMask { observed: vec![true; frames] }
    }

    pub fn len(&self) -> usize {
        self.observed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observed.is_empty()
    }

    pub fn occluded_count(&self) -> usize {
        self.observed.iter().filter(|&&o| !o).count()
    }

    pub fn observed_indices(&self) -> Vec<usize> {
        self.observed.iter().enumerate().filter(|(_, &o)| o).map(|(i, _)| i).collect()
    }
}

/// Frame-drop policy: one contiguous run or a uniform random subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskPolicy {
    Continuous,
    Random,
}

impl std::fmt::Display for MaskPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaskPolicy::Continuous => write!(f, "continuous"),
            MaskPolicy::Random => write!(f, "random"),
        }
    }
}

/// Kind-specific parameters of a synthetic trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MotionKind {
    /// Straight-line motion at a constant velocity per frame.
    Line { start: Vec3, velocity: Vec3 },
    /// Single-axis sinusoid: `amplitude * sin(2 pi f t / fps + phase)`.
    Sinusoid { amplitude: f64, frequency_hz: f64, phase: f64, axis: Vec3 },
    /// Planar circle of the given radius traversed at `frequency_hz`.
    Circle { radius: f64, frequency_hz: f64 },
    /// Independent sinusoids per axis.
    Lissajous { amplitude: Vec3, frequency_hz: Vec3, phase: Vec3 },
    /// Twice-integrated seeded Gaussian accelerations, low-pass filtered.
    SmoothWalk { accel_sigma: f64, cutoff_hz: f64 },
    /// Position is a polynomial in the frame index.
    Polynomial { coefficients: Vec<Vec3> },
}

/// Full description of a synthetic trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub frames: usize,
    pub joints: usize,
    pub fps: f64,
    pub seed: u64,
    #[serde(flatten)]
    pub kind: MotionKind,
}

impl SynthSpec {
    /// Closed-form position for analytic kinds; `None` for smooth-walk.
    pub fn analytic_position(&self, frame: usize, joint: usize) -> Option<Vec3> {
        let t = frame as f64;
        let offset = Vec3::new(0.0, 0.0, joint as f64 * JOINT_OFFSET_M);
        let two_pi = 2.0 * std::f64::consts::PI;
        let base = match &self.kind {
            MotionKind::Line { start, velocity } => *start + *velocity * t,
            MotionKind::Sinusoid { amplitude, frequency_hz, phase, axis } => {
                *axis * (amplitude * (two_pi * frequency_hz * t / self.fps + phase).sin())
            }
            MotionKind::Circle { radius, frequency_hz } => {
                let th = two_pi * frequency_hz * t / self.fps;
                Vec3::new(radius * th.cos(), radius * th.sin(), 0.0)
            }
            MotionKind::Lissajous { amplitude, frequency_hz, phase } => Vec3::new(
                amplitude.x * (two_pi * frequency_hz.x * t / self.fps + phase.x).sin(),
                amplitude.y * (two_pi * frequency_hz.y * t / self.fps + phase.y).sin(),
                amplitude.z * (two_pi * frequency_hz.z * t / self.fps + phase.z).sin(),
            ),
            MotionKind::SmoothWalk { .. } => return None,
            MotionKind::Polynomial { coefficients } => {
                let mut acc = Vec3::ZERO;
                let mut pw = 1.0;
                for c in coefficients {
                    acc = acc + *c * pw;
                    pw *= t;
                }
                acc
            }
        };
        Some(base + offset)
    }
}

fn joint_rng(seed: u64, joint: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (joint as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; two uniforms, one normal kept.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Zero-phase single-pole low-pass: forward pass then backward pass.
fn low_pass(samples: &mut [f64], cutoff_hz: f64, fps: f64) {
    if cutoff_hz <= 0.0 || samples.is_empty() {
        return;
    }
    let dt = 1.0 / fps;
    let alpha = dt / (dt + 1.0 / (2.0 * std::f64::consts::PI * cutoff_hz));
    let mut y = samples[0];
    for s in samples.iter_mut() {
        y += alpha * (*s - y);
        *s = y;
    }
    let mut y = *samples.last().unwrap();
    for s in samples.iter_mut().rev() {
        y += alpha * (*s - y);
        *s = y;
    }
}

/// Generate a deterministic trajectory from the spec.
pub fn gen_trajectory(spec: &SynthSpec) -> Result<Trajectory> {
    if spec.frames < 2 {
        return Err(Error::insufficient(format!("need at least 2 frames, got {}", spec.frames)));
    }
    if spec.joints == 0 {
        return Err(Error::domain("need at least 1 joint".to_string()));
    }
    if !spec.fps.is_finite() || spec.fps <= 0.0 {
        return Err(Error::domain(format!("fps must be positive, got {}", spec.fps)));
    }

    match &spec.kind {
        MotionKind::SmoothWalk { accel_sigma, cutoff_hz } => {
            if !accel_sigma.is_finite() || *accel_sigma < 0.0 {
                return Err(Error::domain("accel_sigma must be >= 0".to_string()));
            }
            let dt = 1.0 / spec.fps;
            let mut columns: Vec<Vec<Vec3>> = Vec::with_capacity(spec.joints);
            for k in 0..spec.joints {
                let mut rng = joint_rng(spec.seed, k);
                let mut axes = [(); 3].map(|_| vec![0.0_f64; spec.frames]);
                for axis in axes.iter_mut() {
                    let mut v = 0.0;
                    let mut p = 0.0;
                    for slot in axis.iter_mut() {
                        *slot = p;
                        let a = standard_normal(&mut rng) * accel_sigma;
                        v += a * dt;
                        p += v * dt;
                    }
                    low_pass(axis, *cutoff_hz, spec.fps);
                }
                columns.push(
                    (0..spec.frames).map(|t| Vec3::new(axes[0][t], axes[1][t], axes[2][t])).collect(),
                );
            }
            Trajectory::from_fn(spec.frames, spec.joints, spec.fps, |t, k| columns[k][t])
        }
        _ => Trajectory::from_fn(spec.frames, spec.joints, spec.fps, |t, k| {
            spec.analytic_position(t, k).expect("analytic kind")
        }),
    }
}

/// Add iid zero-mean Gaussian offsets with the given standard deviation.
pub fn add_noise(traj: &Trajectory, sigma: f64, seed: u64) -> Result<Trajectory> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::domain(format!("sigma must be >= 0, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(traj.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positions = traj
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    *p + Vec3::new(
                        standard_normal(&mut rng) * sigma,
                        standard_normal(&mut rng) * sigma,
                        standard_normal(&mut rng) * sigma,
                    )
                })
                .collect()
        })
        .collect();
    Trajectory::new(positions, traj.fps())
}

/// Build a frame mask occluding `floor(ratio * T)` frames.
///
/// `Continuous` occludes one contiguous run starting at a seeded uniform
/// position; `Random` occludes a seeded uniform subset without replacement.
pub fn make_frame_mask(frames: usize, policy: MaskPolicy, ratio: f64, seed: u64) -> Result<FrameMask> {
    if !(0.0..=1.0).contains(&ratio) {
        return Err(Error::domain(format!("ratio must be in [0, 1], got {ratio}")));
    }
    let occlude = (ratio * frames as f64).floor() as usize;
    if frames.saturating_sub(occlude) < 2 {
        return Err(Error::domain(format!(
            "ratio {ratio} would leave fewer than 2 of {frames} frames observed"
        )));
    }
    let mut observed = vec![true; frames];
    if occlude == 0 {
        return Ok(FrameMask { observed });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match policy {
        MaskPolicy::Continuous => {
            let start = rng.gen_range(0..=frames - occlude);
            for flag in observed.iter_mut().skip(start).take(occlude) {
                *flag = false;
            }
        }
        MaskPolicy::Random => {
            // Partial Fisher-Yates over the index set.
            let mut indices: Vec<usize> = (0..frames).collect();
            for i in 0..occlude {
                let j = rng.gen_range(i..frames);
                indices.swap(i, j);
                observed[indices[i]] = false;
            }
        }
    }
    Ok(FrameMask { observed })
}
