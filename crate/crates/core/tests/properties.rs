//! Property tests for the geometric and serialization invariants.

use motioncurve::degradation::pack_level;
use motioncurve::io::{ChainDoc, MultiLevelDoc, TrajectoryDoc};
use motioncurve::synth::{gen_trajectory, MotionKind, SynthSpec};
use motioncurve::{
    eval_segment, eval_segment_derivative, fit_smooth_chain, fit_trajectory, multilevel_from_finest,
    CubicSegment, Schedule, Trajectory, Vec3,
};
use proptest::prelude::*;

fn vec3_strategy() -> impl Strategy<Value = Vec3> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn segment_strategy() -> impl Strategy<Value = CubicSegment> {
    (vec3_strategy(), vec3_strategy(), vec3_strategy(), vec3_strategy())
        .prop_map(|(p0, c1, c2, p3)| CubicSegment::new(p0, c1, c2, p3, 0.0, 1.0).unwrap())
}

fn de_casteljau(seg: &CubicSegment, u: f64) -> Vec3 {
    let lerp = |a: Vec3, b: Vec3| a * (1.0 - u) + b * u;
    let q0 = lerp(seg.p0, seg.c1);
    let q1 = lerp(seg.c1, seg.c2);
    let q2 = lerp(seg.c2, seg.p3);
    let r0 = lerp(q0, q1);
    let r1 = lerp(q1, q2);
    lerp(r0, r1)
}

proptest! {
    #[test]
    fn endpoint_interpolation_is_exact(seg in segment_strategy()) {
        prop_assert_eq!(eval_segment(&seg, 0.0).unwrap(), seg.p0);
        prop_assert_eq!(eval_segment(&seg, 1.0).unwrap(), seg.p3);
    }

    #[test]
    fn curve_stays_in_control_hull(seg in segment_strategy(), u in 0.0..=1.0f64) {
        let v = eval_segment(&seg, u).unwrap();
        for (coord, pts) in [
            (v.x, [seg.p0.x, seg.c1.x, seg.c2.x, seg.p3.x]),
            (v.y, [seg.p0.y, seg.c1.y, seg.c2.y, seg.p3.y]),
            (v.z, [seg.p0.z, seg.c1.z, seg.c2.z, seg.p3.z]),
        ] {
            let lo = pts.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = pts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(coord >= lo - 1e-12 && coord <= hi + 1e-12);
        }
    }

    #[test]
    fn bernstein_matches_de_casteljau(seg in segment_strategy(), u in 0.0..=1.0f64) {
        let a = eval_segment(&seg, u).unwrap();
        let b = de_casteljau(&seg, u);
        // Relative 1e-12 against the coordinate scale of the segment.
        let scale = [seg.p0, seg.c1, seg.c2, seg.p3]
            .iter()
            .fold(1.0_f64, |m, p| m.max(p.x.abs()).max(p.y.abs()).max(p.z.abs()));
        prop_assert!((a - b).norm() <= 1e-12 * scale);
    }

    #[test]
    fn first_derivative_matches_central_differences(seg in segment_strategy(), u in 0.01..=0.99f64) {
        let h = 1e-6;
        let d = eval_segment_derivative(&seg, u, 1).unwrap();
        let plus = eval_segment(&seg, u + h).unwrap();
        let minus = eval_segment(&seg, u - h).unwrap();
        let fd = (plus - minus) / (2.0 * h);
        prop_assert!((d - fd).norm() <= 1e-6 * (1.0 + d.norm()));
    }

    #[test]
    fn trajectory_json_round_trips(seed in 0u64..1000, frames in 2usize..20, joints in 1usize..4) {
        let traj = gen_trajectory(&SynthSpec {
            frames,
            joints,
            fps: 10.0,
            seed,
            kind: MotionKind::SmoothWalk { accel_sigma: 1.0, cutoff_hz: 1.5 },
        }).unwrap();
        let text = serde_json::to_string(&TrajectoryDoc::from_trajectory(&traj)).unwrap();
        let doc: TrajectoryDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(doc.into_trajectory().unwrap(), traj);
    }

    #[test]
    fn chain_and_pack_json_round_trip(seed in 0u64..500, frames in 5usize..20) {
        let traj = gen_trajectory(&SynthSpec {
            frames,
            joints: 2,
            fps: 10.0,
            seed,
            kind: MotionKind::SmoothWalk { accel_sigma: 1.0, cutoff_hz: 1.5 },
        }).unwrap();
        let chains = fit_trajectory(&traj).unwrap();
        let text = serde_json::to_string(&ChainDoc::from_chains(1, &chains)).unwrap();
        let doc: ChainDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(doc.into_chains().unwrap(), chains.clone());

        let schedule = Schedule::new(vec![4, 1]).unwrap();
        let ml = multilevel_from_finest(&chains, &schedule, 2).unwrap();
        let text = serde_json::to_string(&MultiLevelDoc::from_multilevel(&ml)).unwrap();
        let doc: MultiLevelDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(doc.into_multilevel().unwrap(), ml);
    }
}

#[test]
fn finest_level_of_multilevel_is_bitwise_packing_of_fit() {
    let traj = gen_trajectory(&SynthSpec {
        frames: 33,
        joints: 4,
        fps: 10.0,
        seed: 12,
        kind: MotionKind::SmoothWalk { accel_sigma: 1.5, cutoff_hz: 1.0 },
    })
    .unwrap();
    let schedule = Schedule::new(vec![8, 4, 1]).unwrap();
    let ml = motioncurve::build_multilevel(&traj, &schedule, 4).unwrap();
    let finest = fit_trajectory(&traj).unwrap();
    assert_eq!(ml.levels.last().unwrap(), &pack_level(1, &finest).unwrap());
}

#[test]
fn refitting_resampled_anchors_returns_the_same_anchors() {
    // Resample at anchor times, then refit through those values at the same
    // times: anchors must come back unchanged.
    let traj = gen_trajectory(&SynthSpec {
        frames: 17,
        joints: 1,
        fps: 10.0,
        seed: 3,
        kind: MotionKind::SmoothWalk { accel_sigma: 1.5, cutoff_hz: 1.0 },
    })
    .unwrap();
    let chain = &fit_trajectory(&traj).unwrap()[0];
    let coarse = motioncurve::degrade_chain(chain, 4, 4).unwrap();
    let values = motioncurve::resample_level(&coarse, coarse.anchor_times()).unwrap();
    let refit = fit_smooth_chain(&values, coarse.anchor_times()).unwrap();
    assert_eq!(refit.anchors(), coarse.anchors());
}

#[test]
fn degradation_rmse_monotone_on_smooth_corpus() {
    // Fixed-seed corpus, asserted per fixture.
    let fixtures: Vec<Trajectory> = vec![
        gen_trajectory(&SynthSpec {
            frames: 96,
            joints: 1,
            fps: 10.0,
            seed: 21,
            kind: MotionKind::SmoothWalk { accel_sigma: 1.0, cutoff_hz: 0.8 },
        })
        .unwrap(),
        gen_trajectory(&SynthSpec {
            frames: 96,
            joints: 1,
            fps: 10.0,
            seed: 22,
            kind: MotionKind::Lissajous {
                amplitude: Vec3::new(1.0, 0.6, 0.3),
                frequency_hz: Vec3::new(0.2, 0.15, 0.3),
                phase: Vec3::new(0.0, 0.7, 1.9),
            },
        })
        .unwrap(),
    ];
    for traj in &fixtures {
        let rows = motioncurve::analysis::degradation_error_table(traj, &[1, 2, 4, 8, 16], 4).unwrap();
        for pair in rows.windows(2) {
            assert!(
                pair[1].rmse_m >= pair[0].rmse_m,
                "rmse decreased from step {} ({}) to step {} ({})",
                pair[0].step,
                pair[0].rmse_m,
                pair[1].step,
                pair[1].rmse_m
            );
        }
    }
}
