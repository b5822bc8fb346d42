use std::path::PathBuf;

use lazardlab_core::harness::{parse_modulus, run_compare, run_named, ExperimentConfig, NamedParams, Verdict, EXPERIMENTS};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

const UNITS: &str = r#"
name = "units"
modulus = "3^2"
max_degree = 2
seed = 4

[group]
p = 3
n = 1
level = 1
precision_N = 8
"#;

#[test]
fn compare_reports_are_deterministic() {
    let cfg = ExperimentConfig::parse(UNITS).unwrap();
    let a = run_compare(&cfg).unwrap().to_json();
    let b = run_compare(&cfg).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["experiment", "p", "e", "precision", "degrees", "hypothesis_checks", "stabilization", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["seed"], 4);
    assert_eq!(v["degrees"][1]["group_divisors"], serde_json::json!(["3^2"]));
}

#[test]
fn named_reports_are_deterministic() {
    for name in ["morava", "ramified-bases", "chainmap"] {
        let params = NamedParams { seed: 3, ..NamedParams::default() };
        let a = run_named(name, params).unwrap().to_json();
        assert_eq!(a, run_named(name, params).unwrap().to_json(), "{name}");
    }
    assert!(run_named("nope", NamedParams::default()).is_err());
    assert_eq!(EXPERIMENTS.len(), 5);
}

#[test]
fn units_mod_nine_has_cyclic_cohomology() {
    let r = run_compare(&ExperimentConfig::load(&configs().join("units-z9.toml")).unwrap()).unwrap();
    assert_eq!(r.verdict(), Verdict::Match);
    let lie: Vec<_> = r.degrees.iter().map(|d| d.lie_divisors.clone().unwrap()).collect();
    assert_eq!(lie, vec![vec!["3^2".to_string()], vec!["3^2".to_string()], vec![]]);
    assert!(r.stabilization.iter().all(|s| s.certified));
}

#[test]
fn quaternion_config_fails_the_hypothesis() {
    let r = run_compare(&ExperimentConfig::load(&configs().join("quaternion.toml")).unwrap()).unwrap();
    let v = r.verdict();
    assert!(matches!(v, Verdict::HypothesisFailure(_)), "{v:?}");
    assert_eq!(v.exit_code(), 2);
}

#[test]
fn unstabilized_levels_give_a_mismatch_witness() {
    // with no gap, the first quotient level is taken as the answer
    let cfg = ExperimentConfig { gap: Some(0), ..ExperimentConfig::parse(UNITS).unwrap() };
    let r = run_compare(&cfg).unwrap();
    assert_eq!(r.verdict(), Verdict::Mismatch(Some(2)));
    assert_eq!(r.verdict().exit_code(), 3);
}

#[test]
fn config_validation() {
    assert!(ExperimentConfig::parse(&format!("bogus = 1\n{UNITS}")).is_err());
    assert!(ExperimentConfig::parse(&format!("{UNITS}\nlevle = 2")).is_err());
    assert!(ExperimentConfig::parse(&UNITS.replace("max_degree = 2", "max_degree = 3")).is_err());
    assert!(ExperimentConfig::parse(&UNITS.replace("seed = 4", "seed = 4\ncap = 1000000")).is_err());
    assert_eq!(parse_modulus("3^2").unwrap(), (3, 2));
    assert_eq!(parse_modulus("25").unwrap(), (5, 2));
    assert!(parse_modulus("6").is_err());
    assert!(parse_modulus("3^0").is_err());
}
