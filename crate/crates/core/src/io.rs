//! JSON file formats and the run configuration.
//!
//! All artifacts are JSON: human-inspectable and diff-able at desk scale.
//! Floating-point values serialize with the shortest representation that
//! round-trips to the identical double, so every writer's output is accepted
//! by the corresponding reader without loss.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::degradation::{MotionLevel, MultiLevelMotion, Schedule};
use crate::error::{Error, Result};
use crate::fitting::Trajectory;
use crate::geometry::{BezierChain, Vec3};
use crate::reconstruction::{AttentionMask, TokenKind};
use crate::synth::SynthSpec;

/// Environment variable naming a default [`RunConfig`] file.
pub const CONFIG_ENV_VAR: &str = "MOTIONCURVE_CONFIG";

/// On-disk trajectory document:
/// `{"fps", "T", "K", "joint_names"?, "frames": T x K x 3, "meta"?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryDoc {
    pub fps: f64,
    #[serde(rename = "T")]
    pub frames: usize,
    #[serde(rename = "K")]
    pub joints: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_names: Option<Vec<String>>,
    /// `T x K x 3` nested position arrays, meters.
    #[serde(rename = "frames")]
    pub positions: Vec<Vec<[f64; 3]>>,
    /// Provenance of generated fixtures (generator, seed, PRNG note).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl TrajectoryDoc {
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        TrajectoryDoc {
            fps: traj.fps(),
            frames: traj.frames(),
            joints: traj.joints(),
            joint_names: None,
            positions: traj
                .rows()
                .iter()
                .map(|row| row.iter().map(|p| [p.x, p.y, p.z]).collect())
                .collect(),
            meta: None,
        }
    }

    pub fn into_trajectory(self) -> Result<Trajectory> {
        if self.positions.len() != self.frames {
            return Err(Error::file(format!(
                "T: declared {} but frames has {} rows",
                self.frames,
                self.positions.len()
            )));
        }
        if self.frames < 2 {
            return Err(Error::file(format!("T: insufficient frames, got {}", self.frames)));
        }
        for (t, row) in self.positions.iter().enumerate() {
            if row.len() != self.joints {
                return Err(Error::file(format!(
                    "frames: row {t} has {} joints, declared K={}",
                    row.len(),
                    self.joints
                )));
            }
            for (k, p) in row.iter().enumerate() {
                if p.iter().any(|v| !v.is_finite()) {
                    return Err(Error::file(format!(
                        "frames: non-finite value at frame {t}, joint {k}"
                    )));
                }
            }
        }
        if let Some(names) = &self.joint_names {
            if names.len() != self.joints {
                return Err(Error::file(format!(
                    "joint_names: {} names for K={} joints",
                    names.len(),
                    self.joints
                )));
            }
        }
        if !self.fps.is_finite() || self.fps <= 0.0 {
            return Err(Error::file(format!("fps: must be positive and finite, got {}", self.fps)));
        }
        let positions = self
            .positions
            .into_iter()
            .map(|row| row.into_iter().map(Vec3::from).collect())
            .collect();
        Trajectory::new(positions, self.fps)
    }
}

/// One joint's chain in a [`ChainDoc`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainJoint {
    pub anchor_times: Vec<f64>,
    pub anchors: Vec<[f64; 3]>,
    pub back_controls: Vec<[f64; 3]>,
    pub fwd_controls: Vec<[f64; 3]>,
}

/// On-disk chain document: the per-joint anchor/control lists plus the
/// degradation step that produced them (1 for the finest fit).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainDoc {
    pub schedule_step: usize,
    pub joints: Vec<ChainJoint>,
}

impl ChainDoc {
    pub fn from_chains(step: usize, chains: &[BezierChain]) -> Self {
        ChainDoc {
            schedule_step: step,
            joints: chains
                .iter()
                .map(|c| ChainJoint {
                    anchor_times: c.anchor_times().to_vec(),
                    anchors: c.anchors().iter().map(|p| [p.x, p.y, p.z]).collect(),
                    back_controls: c.back_controls().iter().map(|p| [p.x, p.y, p.z]).collect(),
                    fwd_controls: c.fwd_controls().iter().map(|p| [p.x, p.y, p.z]).collect(),
                })
                .collect(),
        }
    }

    pub fn into_chains(self) -> Result<Vec<BezierChain>> {
        if self.joints.is_empty() {
            return Err(Error::file("joints: document has no joints".to_string()));
        }
        self.joints
            .into_iter()
            .enumerate()
            .map(|(k, j)| {
                let m = j.anchor_times.len();
                if j.anchors.len() != m || j.back_controls.len() != m || j.fwd_controls.len() != m {
                    return Err(Error::file(format!(
                        "joints[{k}]: anchor_times/anchors/back_controls/fwd_controls lengths differ"
                    )));
                }
                BezierChain::new(
                    j.anchor_times,
                    j.anchors.into_iter().map(Vec3::from).collect(),
                    j.back_controls.into_iter().map(Vec3::from).collect(),
                    j.fwd_controls.into_iter().map(Vec3::from).collect(),
                )
                .map_err(|e| Error::file(format!("joints[{k}]: {e}")))
            })
            .collect()
    }
}

/// On-disk packed multi-level document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiLevelDoc {
    pub schedule: Vec<usize>,
    pub levels: Vec<LevelDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelDoc {
    pub step: usize,
    pub anchor_times: Vec<f64>,
    /// `M x K x 9`: anchor, backward control, forward control per joint.
    pub data: Vec<Vec<[f64; 9]>>,
}

impl MultiLevelDoc {
    pub fn from_multilevel(ml: &MultiLevelMotion) -> Self {
        MultiLevelDoc {
            schedule: ml.schedule.steps().to_vec(),
            levels: ml
                .levels
                .iter()
                .map(|l| LevelDoc {
                    step: l.step,
                    anchor_times: l.anchor_times.clone(),
                    data: l.data.clone(),
                })
                .collect(),
        }
    }

    pub fn into_multilevel(self) -> Result<MultiLevelMotion> {
        let schedule = Schedule::new(self.schedule)
            .map_err(|e| Error::file(format!("schedule: {e}")))?;
        if self.levels.len() != schedule.levels() {
            return Err(Error::file(format!(
                "levels: {} entries for a {}-step schedule",
                self.levels.len(),
                schedule.levels()
            )));
        }
        let levels = self
            .levels
            .into_iter()
            .zip(schedule.steps())
            .enumerate()
            .map(|(i, (l, &s))| {
                if l.step != s {
                    return Err(Error::file(format!(
                        "levels[{i}].step: {} does not match schedule step {s}",
                        l.step
                    )));
                }
                if l.data.len() != l.anchor_times.len() {
                    return Err(Error::file(format!(
                        "levels[{i}].data: {} rows for {} anchor times",
                        l.data.len(),
                        l.anchor_times.len()
                    )));
                }
                let k = l.data.first().map_or(0, |r| r.len());
                if l.data.iter().any(|r| r.len() != k) {
                    return Err(Error::file(format!("levels[{i}].data: ragged joint dimension")));
                }
                Ok(MotionLevel { step: l.step, anchor_times: l.anchor_times, data: l.data })
            })
            .collect::<Result<_>>()?;
        Ok(MultiLevelMotion { schedule, levels })
    }
}

/// Compact span-rule description of an [`AttentionMask`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaskDoc {
    pub tokens: usize,
    pub point_tokens: usize,
    pub levels: Vec<MaskLevelDoc>,
    /// The visibility rule the dense matrix follows.
    pub rule: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaskLevelDoc {
    pub level: usize,
    pub step: usize,
    pub start: usize,
    pub tokens: usize,
}

impl MaskDoc {
    pub fn from_mask(mask: &AttentionMask) -> Self {
        let point_tokens = mask
            .spans()
            .iter()
            .find(|s| s.kind == TokenKind::Point)
            .map_or(0, |s| s.len);
        let levels = mask
            .spans()
            .iter()
            .filter_map(|s| match s.kind {
                TokenKind::Motion { level, step } => Some(MaskLevelDoc {
                    level,
                    step,
                    start: s.start,
                    tokens: s.len,
                }),
                TokenKind::Point => None,
            })
            .collect();
        MaskDoc {
            tokens: mask.tokens(),
            point_tokens,
            levels,
            rule: "every token attends to all point tokens; a level-l motion token attends to \
                   motion tokens of levels 1..=l; point tokens attend only to point tokens"
                .to_string(),
        }
    }
}

/// Dense 0/1 CSV rendering of an attention mask, one row per token.
pub fn mask_to_csv(mask: &AttentionMask) -> String {
    let mut out = String::new();
    let n = mask.tokens();
    out.push_str("row");
    for c in 0..n {
        out.push_str(&format!(",c{c}"));
    }
    out.push('\n');
    for (r, row) in mask.rows().iter().enumerate() {
        out.push_str(&r.to_string());
        for &v in row {
            out.push_str(if v { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}

/// Run configuration with the documented defaults. Flags override config
/// file values, which override these defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub schedule: Vec<usize>,
    pub samples_per_frame: usize,
    /// Multi-level loss weight; reporting only.
    pub lambda_m: f64,
    pub fps: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schedule: vec![32, 16, 8, 1],
            samples_per_frame: 4,
            lambda_m: 0.5,
            fps: 10.0,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        Schedule::new(self.schedule.clone())?;
        if self.samples_per_frame == 0 {
            return Err(Error::domain("samples_per_frame must be >= 1".to_string()));
        }
        if !self.fps.is_finite() || self.fps <= 0.0 {
            return Err(Error::domain(format!("fps must be positive, got {}", self.fps)));
        }
        Ok(())
    }

    pub fn schedule(&self) -> Result<Schedule> {
        Schedule::new(self.schedule.clone())
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::file(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::file(format!("{}: {e}", path.display())))
}

pub fn read_trajectory(path: &Path) -> Result<Trajectory> {
    let doc: TrajectoryDoc = parse_json(path, &read_to_string(path)?)?;
    doc.into_trajectory()
}

pub fn write_trajectory(path: &Path, traj: &Trajectory, meta: Option<serde_json::Value>) -> Result<()> {
    let mut doc = TrajectoryDoc::from_trajectory(traj);
    doc.meta = meta;
    write_json(path, &doc)
}

pub fn read_chains(path: &Path) -> Result<(usize, Vec<BezierChain>)> {
    let doc: ChainDoc = parse_json(path, &read_to_string(path)?)?;
    let step = doc.schedule_step;
    Ok((step, doc.into_chains()?))
}

pub fn write_chains(path: &Path, step: usize, chains: &[BezierChain]) -> Result<()> {
    write_json(path, &ChainDoc::from_chains(step, chains))
}

pub fn read_multilevel(path: &Path) -> Result<MultiLevelMotion> {
    let doc: MultiLevelDoc = parse_json(path, &read_to_string(path)?)?;
    doc.into_multilevel()
}

pub fn write_multilevel(path: &Path, ml: &MultiLevelMotion) -> Result<()> {
    write_json(path, &MultiLevelDoc::from_multilevel(ml))
}

pub fn read_config(path: &Path) -> Result<RunConfig> {
    let cfg: RunConfig = parse_json(path, &read_to_string(path)?)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Round-trip a [`SynthSpec`] through its JSON form.
pub fn read_synth_spec(path: &Path) -> Result<SynthSpec> {
    parse_json(path, &read_to_string(path)?)
}
