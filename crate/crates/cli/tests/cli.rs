//! End-to-end tests of the `motioncurve` binary: exit codes, error
//! messages, file outputs, and config precedence.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use motioncurve::io::read_trajectory;
use motioncurve::metrics::rmse;

const BIN: &str = env!("CARGO_BIN_EXE_motioncurve");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("MOTIONCURVE_CONFIG")
        .output()
        .expect("spawn motioncurve")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

struct Workspace {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Workspace {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        Workspace { _dir: dir, root }
    }

    fn path(&self, name: &str) -> String {
        self.root.join(name).to_str().unwrap().to_string()
    }
}

#[test]
fn fit_rejects_single_frame_input() {
    let ws = Workspace::new();
    let traj = ws.path("one.json");
    std::fs::write(&traj, r#"{"fps": 10.0, "T": 1, "K": 1, "frames": [[[0,0,0]]]}"#).unwrap();
    let out = run(&["fit", "-i", &traj, "-o", &ws.path("chain.json")]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("insufficient frames"), "{}", stderr(&out));
}

#[test]
fn fit_rejects_malformed_json_with_field_name() {
    let ws = Workspace::new();
    let traj = ws.path("bad.json");
    std::fs::write(&traj, r#"{"fps": 10.0, "T": 3, "K": 1, "frames": [[[0,0,0]],[[1,0,0]]]}"#)
        .unwrap();
    let out = run(&["fit", "-i", &traj, "-o", &ws.path("chain.json")]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("T:"), "{}", stderr(&out));

    std::fs::write(&traj, "{ this is not json").unwrap();
    let out = run(&["fit", "-i", &traj, "-o", &ws.path("chain.json")]);
    assert!(!out.status.success());
}

#[test]
fn fit_prints_zero_interpolation_residual() {
    let ws = Workspace::new();
    let traj = ws.path("traj.json");
    assert!(run(&["synth", "--kind", "line", "--frames", "4", "-o", &traj]).status.success());
    let out = run(&["fit", "-i", &traj, "-o", &ws.path("chain.json")]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(stdout.contains("interpolation_residual 0"), "{stdout}");
}

#[test]
fn degrade_rejects_step_beyond_length() {
    let ws = Workspace::new();
    let traj = ws.path("traj.json");
    let chain = ws.path("chain.json");
    assert!(run(&["synth", "--kind", "line", "--frames", "8", "-o", &traj]).status.success());
    assert!(run(&["fit", "-i", &traj, "-o", &chain]).status.success());
    let out = run(&["degrade", "-i", &chain, "--step", "8", "-o", &ws.path("d.json")]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("step"), "{}", stderr(&out));
}

#[test]
fn degrade_schedule_writes_suffixed_files() {
    let ws = Workspace::new();
    let traj = ws.path("traj.json");
    let chain = ws.path("chain.json");
    assert!(run(&["synth", "--kind", "sinusoid", "--frames", "33", "-o", &traj]).status.success());
    assert!(run(&["fit", "-i", &traj, "-o", &chain]).status.success());
    let out = run(&["degrade", "-i", &chain, "--schedule", "8,4,1", "-o", &ws.path("deg.json")]);
    assert!(out.status.success(), "{}", stderr(&out));
    for step in [8, 4, 1] {
        assert!(Path::new(&ws.path(&format!("deg_s{step}.json"))).exists(), "missing step {step}");
    }
}

#[test]
fn synth_fit_resample_round_trip_reproduces_frames() {
    let ws = Workspace::new();
    let traj = ws.path("traj.json");
    let chain = ws.path("chain.json");
    let recon = ws.path("recon.json");
    assert!(run(&[
        "synth", "--kind", "lissajous", "--frames", "32", "--joints", "3", "-o", &traj
    ])
    .status
    .success());
    assert!(run(&["fit", "-i", &traj, "-o", &chain]).status.success());
    assert!(run(&["resample", "-i", &chain, "--times", "all", "-o", &recon]).status.success());
    let a = read_trajectory(Path::new(&traj)).unwrap();
    let b = read_trajectory(Path::new(&recon)).unwrap();
    assert!(rmse(&a, &b).unwrap() <= 1e-9);
}

#[test]
fn analyze_straight_line_rmse_column_is_zero() {
    let ws = Workspace::new();
    let traj = ws.path("traj.json");
    let csv = ws.path("table.csv");
    assert!(run(&["synth", "--kind", "line", "--frames", "64", "-o", &traj]).status.success());
    assert!(run(&["analyze", "-i", &traj, "--steps", "1,2,4,8,16,32", "-o", &csv])
        .status
        .success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "step,control_point_ratio,rmse_m,accel_err_cm_s2,max_err_m");
    for line in lines {
        let rmse_col: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!(rmse_col <= 1e-10, "{line}");
    }
}

#[test]
fn mask_demo_attention_dump_matches_enumerated_matrix() {
    let ws = Workspace::new();
    let csv = ws.path("attn.csv");
    let out = run(&[
        "mask-demo",
        "--frames",
        "4",
        "--schedule",
        "2,1",
        "--ratio",
        "0.25",
        "-o",
        &ws.path("sweep.csv"),
        "--attention-csv",
        &csv,
        "--attention-json",
        &ws.path("attn.json"),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 11); // header + 10 token rows
    let expect = |prefix: usize| {
        (0..10).map(|c| if c < prefix { ",1" } else { ",0" }).collect::<String>()
    };
    for r in 0..4 {
        assert_eq!(rows[r + 1], format!("{r}{}", expect(4)));
    }
    for r in 4..6 {
        assert_eq!(rows[r + 1], format!("{r}{}", expect(6)));
    }
    for r in 6..10 {
        assert_eq!(rows[r + 1], format!("{r}{}", expect(10)));
    }

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(ws.path("attn.json")).unwrap()).unwrap();
    assert_eq!(doc["tokens"], 10);
    assert_eq!(doc["point_tokens"], 4);
    assert_eq!(doc["levels"][0]["tokens"], 2);
    assert_eq!(doc["levels"][1]["tokens"], 4);
}

#[test]
fn mask_demo_sweep_has_ratio_zero_error_semantics() {
    // Ratio column of the sweep covers 0.1..0.7; at every ratio the
    // continuous row's error is at least the random row's.
    let ws = Workspace::new();
    let csv = ws.path("sweep.csv");
    let out = run(&["mask-demo", "--frames", "128", "--seed", "7", "-o", &csv]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut by_ratio: std::collections::BTreeMap<String, Vec<(String, f64)>> = Default::default();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        by_ratio
            .entry(cols[0].to_string())
            .or_default()
            .push((cols[1].to_string(), cols[3].parse().unwrap()));
    }
    assert_eq!(by_ratio.len(), 7);
    for (ratio, rows) in by_ratio {
        let cont = rows.iter().find(|(p, _)| p == "continuous").unwrap().1;
        let rand = rows.iter().find(|(p, _)| p == "random").unwrap().1;
        assert!(cont >= rand, "ratio {ratio}: continuous {cont} < random {rand}");
    }
}

#[test]
fn eval_multilevel_reports_weighted_loss() {
    let ws = Workspace::new();
    let traj = ws.path("traj.json");
    let chain = ws.path("chain.json");
    let pack = ws.path("pack.json");
    assert!(run(&["synth", "--kind", "sinusoid", "--frames", "33", "-o", &traj]).status.success());
    assert!(run(&["fit", "-i", &traj, "-o", &chain]).status.success());
    assert!(run(&["degrade", "-i", &chain, "--schedule", "8,1", "--pack", "-o", &pack])
        .status
        .success());
    let out = run(&["eval", "--pred", &pack, "--gt", &pack, "--multilevel"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(doc["representation_loss"], 0.0);
    assert_eq!(doc["lambda_m"], 0.5);
}

#[test]
fn config_file_overrides_defaults_and_flags_override_config() {
    let ws = Workspace::new();
    let cfg = ws.path("config.json");
    std::fs::write(&cfg, r#"{"fps": 25.0}"#).unwrap();

    // Config fps flows into synth output.
    let traj = ws.path("traj.json");
    assert!(run(&["synth", "--config", &cfg, "--kind", "line", "--frames", "4", "-o", &traj])
        .status
        .success());
    let doc = read_trajectory(Path::new(&traj)).unwrap();
    assert_eq!(doc.fps(), 25.0);

    // Explicit flag wins over the config file.
    assert!(run(&[
        "synth", "--config", &cfg, "--kind", "line", "--frames", "4", "--fps", "50", "-o", &traj
    ])
    .status
    .success());
    let doc = read_trajectory(Path::new(&traj)).unwrap();
    assert_eq!(doc.fps(), 50.0);

    // The environment variable names a default config.
    let traj_env = ws.path("traj_env.json");
    let out = Command::new(BIN)
        .args(["synth", "--kind", "line", "--frames", "4", "-o", &traj_env])
        .env("MOTIONCURVE_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = read_trajectory(Path::new(&traj_env)).unwrap();
    assert_eq!(doc.fps(), 25.0);

    // A broken config is a hard error.
    std::fs::write(&cfg, r#"{"schedule": [1, 2]}"#).unwrap();
    let out = run(&["synth", "--config", &cfg, "--kind", "line", "--frames", "4", "-o", &traj]);
    assert!(!out.status.success());
}

#[test]
fn synth_is_deterministic_across_runs() {
    let ws = Workspace::new();
    let a = ws.path("a.json");
    let b = ws.path("b.json");
    for path in [&a, &b] {
        assert!(run(&[
            "synth", "--kind", "smooth-walk", "--frames", "32", "--joints", "2", "--seed", "9",
            "-o", path
        ])
        .status
        .success());
    }
    assert_eq!(std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
}

#[test]
fn eval_root_align_cancels_common_root_motion() {
    // Two trajectories differing only by per-frame root translation align
    // to zero error after --root-align.
    let ws = Workspace::new();
    let base = ws.path("base.json");
    assert!(run(&[
        "synth", "--kind", "sinusoid", "--frames", "16", "--joints", "3", "-o", &base
    ])
    .status
    .success());

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&base).unwrap()).unwrap();
    let mut shifted = doc.clone();
    let frames = shifted["frames"].as_array_mut().unwrap();
    for (t, row) in frames.iter_mut().enumerate() {
        for joint in row.as_array_mut().unwrap() {
            let coords = joint.as_array_mut().unwrap();
            let dx = 0.01 * t as f64;
            coords[0] = serde_json::json!(coords[0].as_f64().unwrap() + dx);
        }
    }
    let moved = ws.path("moved.json");
    std::fs::write(&moved, serde_json::to_string(&shifted).unwrap()).unwrap();

    let report = ws.path("report.json");
    assert!(run(&["eval", "--pred", &moved, "--gt", &base, "--root-align", "-o", &report])
        .status
        .success());
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(r["rmse_m"].as_f64().unwrap() <= 1e-12);
    assert!(r["mpjpe_mm"].as_f64().unwrap() <= 1e-9);
}
