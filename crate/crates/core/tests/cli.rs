use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use modelspace::cli_io::{parse_config, parse_measure, parse_set, parse_theta};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("modelspace-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modelspace")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn entropy_of_two_points() {
    let o = run(&["entropy", path(&fixture("two_point_set.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("0.6931471805599453\n"));
}

#[test]
fn decide_single_zero() {
    let o = run(&["decide", path(&fixture("single_zero_theta.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("zero"));
}

#[test]
fn membership_command() {
    let dir = scratch("membership");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("f.json");
    // reproducing kernel at the zero 0.5 of Θ
    let c: Vec<[f64; 2]> = (0..200).map(|k| [0.5f64.powi(k), 0.0]).collect();
    std::fs::write(&f, serde_json::to_string(&c).unwrap()).unwrap();
    let o = run(&["membership", path(&f), path(&fixture("single_zero_theta.json")), "--tol", "1e-10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(&f, "[[0,0],[1,0]]").unwrap();
    assert_eq!(run(&["membership", path(&f), path(&fixture("single_zero_theta.json"))]).status.code(), Some(1));
}

#[test]
fn schema_errors_exit_two_with_position() {
    let dir = scratch("schema");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"atoms\": [{\"angle_turns\": 0.1}]\n}\n").unwrap();
    let o = run(&["inner-eval", path(&bad), path(&fixture("sample_points.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_modelspace"))
        .env("MODELSPACE_THREADS", "0")
        .args(["entropy", path(&fixture("two_point_set.json"))])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fixtures_round_trip() {
    let read = |n: &str| (fixture(n), std::fs::read(fixture(n)).unwrap());
    for name in ["thin_cantor.json", "point_mass.json"] {
        let (p, b) = read(name);
        let mu = parse_measure(&p, &b).unwrap();
        assert_eq!(parse_measure(&p, serde_json::to_string(&mu).unwrap().as_bytes()).unwrap(), mu);
    }
    let (p, b) = read("default_config.json");
    let cfg = parse_config(&p, &b).unwrap();
    assert_eq!(cfg, modelspace::pipeline::PipelineConfig::default());
    assert_eq!(parse_config(&p, serde_json::to_string(&cfg).unwrap().as_bytes()).unwrap(), cfg);
    let (p, b) = read("two_point_set.json");
    let set = parse_set(&p, &b).unwrap();
    assert_eq!(set.points, vec![0.0, 0.5]);
    let (p, b) = read("single_zero_theta.json");
    assert_eq!(parse_theta(&p, &b).unwrap().blaschke_zeros.len(), 1);
}

#[test]
fn pw_example_is_reproducible() {
    let (a, b) = (scratch("pw-a"), scratch("pw-b"));
    for d in [&a, &b] {
        let o = run(&["--out", path(d), "pw-example", "--samples", "65536"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["result.json", "curve.csv"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
    }
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
    assert_eq!(manifest["command"], "pw-example");
}
