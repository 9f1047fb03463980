use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn curve(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/curves").join(name)
}

fn run(args: &[&str], curve_file: Option<PathBuf>, out: &std::path::Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_toric-ech"));
    cmd.args(args).arg("--out").arg(out);
    if let Some(c) = curve_file {
        cmd.arg("--curve").arg(c);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn capacities_of_the_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["capacities", "--k", "1..7"], Some(curve("ball.json")), dir.path());
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("capacities.csv")).unwrap();
    let values: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(values, ["0", "1", "1", "2", "2", "2", "3"]);
    assert!(dir.path().join("optima.csv").exists());
}

#[test]
fn mode_mismatch_is_a_config_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&["capacities", "--mode", "concave"], Some(curve("quarter-circle.json")), &out_dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_dir.exists());
}

#[test]
fn bad_arguments_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["capacities", "--k", "0..3"], Some(curve("ball.json")), dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["capacities"], Some(dir.path().join("missing.json")), dir.path());
    assert_eq!(out.status.code(), Some(3));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"kind": "polygonal", "vertices": []}"#).unwrap();
    let out = run(&["capacities"], Some(bad), dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"], None, dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn default_check_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["check"], None, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| l.starts_with("ok")));
}

#[test]
fn check_against_expected_values() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    fs::write(&good, "k,value\n1,0\n2,1\n4,2\n7,3\n").unwrap();
    let out = run(&["check", "--expect", good.to_str().unwrap()], Some(curve("ball.json")), dir.path());
    assert!(out.status.success());
    let wrong = dir.path().join("wrong.csv");
    fs::write(&wrong, "k,value\n1,0\n2,2\n").unwrap();
    let out = run(&["check", "--expect", wrong.to_str().unwrap()], Some(curve("ball.json")), dir.path());
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL expected capacities"));
}

#[test]
fn equidist_and_weyl_write_tables_and_figures() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["equidist", "--k", "10,20", "--arcs", "0:pi/4,pi/4:pi/2"],
        Some(curve("quarter-circle.json")),
        dir.path(),
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("equidist.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    for f in ["equidist_err.svg", "equidist_paths.svg"] {
        assert!(fs::read_to_string(dir.path().join(f)).unwrap().starts_with("<svg"));
    }
    let out = run(&["weyl", "--k", "1..20"], Some(curve("ellipsoid-1-2.json")), dir.path());
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("weyl.csv")).unwrap().lines().count(), 21);
    assert!(dir.path().join("weyl.svg").exists());
}

#[test]
fn face_supported_edges_warn() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["equidist", "--k", "5"], Some(curve("ball.json")), dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn isoperimetric_trials_and_nice_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["isoper", "--trials", "20", "--mode", "concave"], None, dir.path());
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("isoper.csv")).unwrap().lines().count(), 21);
    let out = run(&["nice", "--level", "2"], Some(curve("ball.json")), dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("not nice"));
    assert!(dir.path().join("normal_points.csv").exists());
}
