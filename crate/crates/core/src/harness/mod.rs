//! Experiment configs, the group/Lie comparison, named experiments and JSON
//! reports.

mod compare;
mod named;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::snf::prime_power;
use crate::pgroups::GroupSpecFile;

pub use compare::run_compare;
pub use named::{run_named, NamedParams, EXPERIMENTS};

/// Largest quotient order any experiment may enumerate.
pub const GLOBAL_CAP: u64 = 20_000;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub group: Option<GroupSpecFile>,
    /// Path of a group spec file, relative to the config file.
    #[serde(default)]
    pub group_file: Option<PathBuf>,
    #[serde(default = "default_coefficients")]
    pub coefficients: String,
    /// `"p^k"` or the integer `p^k`.
    pub modulus: String,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    #[serde(default = "default_cap")]
    pub cap: u64,
    #[serde(default)]
    pub gap: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_coefficients() -> String {
    "trivial".into()
}

fn default_max_degree() -> usize {
    2
}

fn default_cap() -> u64 {
    2187
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        if cfg.cap > GLOBAL_CAP {
            return Err(Error::InvalidInput(format!("cap {} exceeds the global cap {GLOBAL_CAP}", cfg.cap)));
        }
        if cfg.max_degree > 2 {
            return Err(Error::InvalidInput("group-side degrees above 2 are not supported".into()));
        }
        Ok(cfg)
    }

    /// Reads a config and inlines `group_file`.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::parse(&std::fs::read_to_string(path)?)?;
        if let Some(f) = cfg.group_file.take() {
            if cfg.group.is_some() {
                return Err(Error::InvalidInput("give either `group` or `group_file`, not both".into()));
            }
            let full = path.parent().unwrap_or(Path::new(".")).join(f);
            let text = std::fs::read_to_string(&full)
                .map_err(|e| Error::InvalidInput(format!("group file {}: {e}", full.display())))?;
            cfg.group = Some(GroupSpecFile::parse(&text)?);
        }
        if cfg.group.is_none() {
            return Err(Error::InvalidInput("config names no group".into()));
        }
        Ok(cfg)
    }
}

/// `"3^2"` or `"9"` as `(3, 2)`.
pub fn parse_modulus(s: &str) -> Result<(u64, u32)> {
    let bad = || Error::InvalidInput(format!("bad modulus {s:?}, expected p^k"));
    match s.trim().split_once('^') {
        Some((p, k)) => {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            if !crate::padic::modint::is_prime(p) || k == 0 {
                return Err(bad());
            }
            Ok((p, k))
        }
        None => prime_power(s.trim().parse().map_err(|_| bad())?).ok_or_else(bad),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// A hypothesis of the comparison; failure aborts with exit code 2.
    Hypothesis,
    /// A published or closed-form value; failure is a mismatch.
    Expectation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn hypothesis(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), kind: CheckKind::Hypothesis, passed, detail: detail.into() }
    }

    pub fn expectation(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), kind: CheckKind::Expectation, passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub fixture: String,
    pub i: usize,
    pub group_divisors: Option<Vec<String>>,
    pub lie_divisors: Option<Vec<String>>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub fixture: String,
    pub first_level: usize,
    pub top_level: usize,
    pub stabilization_level: usize,
    pub stabilized: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub p: u64,
    pub e: u32,
    pub precision: u32,
    pub degrees: Vec<DegreeComparison>,
    pub hypothesis_checks: Vec<Check>,
    pub stabilization: Vec<Stabilization>,
    pub seed: u64,
    pub details: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    HypothesisFailure(String),
    /// Smallest mismatching degree, if the mismatch is tied to one.
    Mismatch(Option<usize>),
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Match => 0,
            Verdict::HypothesisFailure(_) => 2,
            Verdict::Mismatch(_) => 3,
        }
    }
}

impl Report {
    pub fn verdict(&self) -> Verdict {
        if let Some(c) = self.hypothesis_checks.iter().find(|c| c.kind == CheckKind::Hypothesis && !c.passed) {
            return Verdict::HypothesisFailure(format!("{}: {}", c.name, c.detail));
        }
        let witness = self.degrees.iter().filter(|d| !d.matches).map(|d| d.i).min();
        if witness.is_some() || self.hypothesis_checks.iter().any(|c| !c.passed) {
            return Verdict::Mismatch(witness);
        }
        Verdict::Match
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// `Z/p^a` summands written as `"p^a"`.
pub fn divisors(p: u64, exps: &[u32]) -> Vec<String> {
    exps.iter().map(|a| format!("{p}^{a}")).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(parse_modulus("3^2").unwrap(), (3, 2));
        assert_eq!(parse_modulus("25").unwrap(), (5, 2));
        assert!(parse_modulus("6").is_err());
        assert!(parse_modulus("4^1").is_err());
    }

    #[test]
    fn config_round_trip() {
        let text = r#"
name = "heis"
modulus = "3^1"
coefficients = "trivial"
[group]
p = 3
precision_N = 8
fixture_tag = "heisenberg"
"#;
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.max_degree, 2);
        assert_eq!(cfg.group.unwrap().to_spec().unwrap().n, 3);
        assert!(ExperimentConfig::parse("name = \"x\"\nmodulus = \"3\"\ncap = 100000\n").is_err());
    }

    #[test]
    fn verdict_priorities() {
        let mut r = Report {
            experiment: "t".into(),
            p: 3,
            e: 1,
            precision: 8,
            degrees: vec![],
            hypothesis_checks: vec![Check::expectation("x", true, "")],
            stabilization: vec![],
            seed: 0,
            details: serde_json::Value::Null,
        };
        assert_eq!(r.verdict(), Verdict::Match);
        r.degrees.push(DegreeComparison { fixture: "f".into(), i: 2, group_divisors: None, lie_divisors: None, matches: false });
        assert_eq!(r.verdict(), Verdict::Mismatch(Some(2)));
        r.hypothesis_checks.push(Check::hypothesis("h", false, "no"));
        assert_eq!(r.verdict().exit_code(), 2);
    }
}
