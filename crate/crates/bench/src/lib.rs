//! Shared fixtures for the pipeline benchmarks.

use motioncurve::synth::{gen_trajectory, MotionKind, SynthSpec};
use motioncurve::Trajectory;

/// A mocap-sized fixture: T frames of K joints of smooth random motion.
pub fn walk_fixture(frames: usize, joints: usize) -> Trajectory {
    gen_trajectory(&SynthSpec {
        frames,
        joints,
        fps: 10.0,
        seed: 7,
        kind: MotionKind::SmoothWalk { accel_sigma: 1.5, cutoff_hz: 1.0 },
    })
    .expect("fixture generation")
}
