use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lazardlab"))
}

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lazardlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compare_match_exits_zero_and_is_reproducible() {
    let cfg = configs().join("units-z9.toml");
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    let first = run(&["compare", "--config", path(&cfg), "--out", path(&a)]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run(&["compare", "--config", path(&cfg), "--out", path(&b)]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let stdout = run(&["compare", "--config", path(&cfg)]);
    assert_eq!(stdout.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn hypothesis_failure_exits_two() {
    let out = run(&["compare", "--config", path(&configs().join("quaternion.toml"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis failed"));
}

#[test]
fn mismatch_exits_three_with_witness() {
    let cfg = scratch("gap0.toml");
    std::fs::write(
        &cfg,
        "name = \"gap0\"\nmodulus = \"3^2\"\nmax_degree = 2\ngap = 0\n\n[group]\np = 3\nn = 1\nlevel = 1\nprecision_N = 8\n",
    )
    .unwrap();
    let out = run(&["compare", "--config", path(&cfg)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("minimal witness degree 2"));
}

#[test]
fn named_runs_are_byte_identical() {
    let a = run(&["run", "morava", "--seed", "7"]);
    let b = run(&["run", "morava", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
    assert_eq!(run(&["run", "no-such-experiment"]).status.code(), Some(1));
}

#[test]
fn lie_cohom_of_quaternion_lattice() {
    let lat = configs().join("quaternion-p5.lattice");
    let v = json(&run(&["lie-cohom", path(&lat), "--mod", "5"]));
    let dims: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["dim_mod_p"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 3, 4, 3, 1]);
    let v = json(&run(&["lie-cohom", path(&lat), "--mod", "25"]));
    assert_eq!(v["degrees"][1]["divisors"], serde_json::json!(["5^1", "5^1", "5^2"]));
    assert_eq!(run(&["lie-cohom", path(&lat), "--mod", "6"]).status.code(), Some(1));
}

#[test]
fn phi_of_heisenberg_cocycle() {
    let out = run(&[
        "phi",
        path(&configs().join("heisenberg-group.toml")),
        path(&configs().join("heisenberg-cocycle.txt")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bar_cocycle"], true);
    assert_eq!(v["phi_is_ce_cocycle"], true);
    assert_eq!(v["nonzero_class_mod_p"], true);
    assert_eq!(v["phi"], serde_json::json!({"0,1": "1"}));
}

#[test]
fn check_group_reports_basis() {
    let out = run(&["check-group", path(&configs().join("heisenberg-group.toml"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["basis"].as_array().unwrap().len(), 3);
}
