use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use motioncurve::synth::{make_frame_mask, MaskPolicy};
use motioncurve::{
    bridge_gaps, build_block_causal_mask, build_multilevel, degrade_chain, fit_trajectory,
    resample_level, Schedule,
};
use motioncurve_bench::walk_fixture;

fn bench_fit(c: &mut Criterion) {
    let mut group = c.benchmark_group("fit_trajectory");
    for (frames, joints) in [(32usize, 24usize), (128, 24), (512, 24)] {
        let traj = walk_fixture(frames, joints);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("T{frames}_K{joints}")),
            &traj,
            |b, traj| b.iter(|| fit_trajectory(black_box(traj)).unwrap()),
        );
    }
    group.finish();
}

fn bench_degrade(c: &mut Criterion) {
    let traj = walk_fixture(128, 1);
    let chain = fit_trajectory(&traj).unwrap().remove(0);
    let mut group = c.benchmark_group("degrade_chain");
    for step in [2usize, 8, 32] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("s{step}")), &step, |b, &s| {
            b.iter(|| degrade_chain(black_box(&chain), s, 4).unwrap())
        });
    }
    group.finish();
}

fn bench_multilevel(c: &mut Criterion) {
    let traj = walk_fixture(128, 24);
    let schedule = Schedule::new(vec![32, 16, 8, 1]).unwrap();
    c.bench_function("build_multilevel_T128_K24", |b| {
        b.iter(|| build_multilevel(black_box(&traj), &schedule, 4).unwrap())
    });
}

fn bench_resample(c: &mut Criterion) {
    let traj = walk_fixture(128, 1);
    let chain = fit_trajectory(&traj).unwrap().remove(0);
    let coarse = degrade_chain(&chain, 8, 4).unwrap();
    let times: Vec<f64> = (0..128).map(|t| t as f64).collect();
    c.bench_function("resample_s8_to_128", |b| {
        b.iter(|| resample_level(black_box(&coarse), black_box(&times)).unwrap())
    });
}

fn bench_mask(c: &mut Criterion) {
    let schedule = Schedule::new(vec![32, 16, 8, 1]).unwrap();
    let sizes: Vec<usize> = schedule.steps().iter().map(|&s| 128usize.div_ceil(s)).collect();
    c.bench_function("block_causal_mask_T128", |b| {
        b.iter(|| build_block_causal_mask(black_box(128), &schedule, &sizes).unwrap())
    });
}

fn bench_bridge(c: &mut Criterion) {
    let traj = walk_fixture(128, 24);
    let mask = make_frame_mask(128, MaskPolicy::Continuous, 0.25, 7).unwrap();
    c.bench_function("bridge_gaps_T128_K24", |b| {
        b.iter(|| bridge_gaps(black_box(&traj), &mask).unwrap())
    });
}

criterion_group!(
    benches,
    bench_fit,
    bench_degrade,
    bench_multilevel,
    bench_resample,
    bench_mask,
    bench_bridge
);
criterion_main!(benches);
