use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lazardlab_core::filtered::{check_filtration_on, find_ordered_basis, FilteredGroup};
use lazardlab_core::harness::{parse_modulus, run_compare, run_named, ExperimentConfig, NamedParams, Report, Verdict};
use lazardlab_core::lazard_lie::{lazard_lie, LieLattice, LieModule};
use lazardlab_core::lazmap::{bar_differential_analytic, ce_differential, lazard_phi, AnalyticCochain, Chart};
use lazardlab_core::lie_cohom::{ce_complex, ce_complex_trivial, cohomology};
use lazardlab_core::padic::Zpk;
use lazardlab_core::pgroups::{build_group, check_uniform, GroupSpecFile};
use lazardlab_core::Error;

#[derive(Parser)]
#[command(name = "lazardlab", version, about = "Group cohomology against Lie lattice cohomology for p-valued groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare both sides for the group and module in a TOML config.
    Compare {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `out` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a registered experiment: morava, exterior, ramified-bases, uniformity, chainmap.
    Run {
        name: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Filtration axioms, ordered basis and uniformity of a group spec file.
    CheckGroup {
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cohomology of a Lie lattice file with trivial coefficients mod p^k.
    LieCohom {
        lattice: PathBuf,
        #[arg(long = "mod")]
        modulus: String,
        /// `trivial` or `adjoint`.
        #[arg(long, default_value = "trivial")]
        coefficients: String,
    },
    /// Apply Φ to a polynomial cochain on the group's exponential chart.
    Phi { group: PathBuf, cochain: PathBuf },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(report: &Report, out: Option<&Path>) -> Result<u8, Error> {
    emit(&report.to_json(), out)?;
    let v = report.verdict();
    match &v {
        Verdict::Match => eprintln!("{}: match", report.experiment),
        Verdict::HypothesisFailure(why) => eprintln!("{}: hypothesis failed: {why}", report.experiment),
        Verdict::Mismatch(Some(i)) => eprintln!("{}: mismatch, minimal witness degree {i}", report.experiment),
        Verdict::Mismatch(None) => {
            let failed: Vec<&str> =
                report.hypothesis_checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            eprintln!("{}: mismatch in {}", report.experiment, failed.join(", "));
        }
    }
    Ok(v.exit_code() as u8)
}

fn json_out(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Compare { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let report = run_compare(&cfg)?;
            finish(&report, out.as_deref().or(cfg.out.as_deref()))
        }
        Command::Run { name, p, precision, max_degree, seed, out } => {
            let report = run_named(&name, NamedParams { p, precision, max_degree, seed })?;
            finish(&report, out.as_deref())
        }
        Command::CheckGroup { spec, seed } => {
            let g = build_group(&GroupSpecFile::parse(&read(&spec)?)?.to_spec()?)?;
            let basis = find_ordered_basis(&g)?;
            let axioms = check_filtration_on(&g, 40, seed, &basis.elements);
            let uniform = check_uniform(&g, 4)?;
            let v = json!({
                "group": g.describe(),
                "filtration": axioms,
                "basis_valuations": basis.valuations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "basis": basis.elements,
                "equi_p_valued": basis.equi_p_valued,
                "uniformity": uniform,
            });
            emit(&json_out(&v), None)?;
            if axioms.p_valued() {
                Ok(0)
            } else {
                eprintln!("not p-valued: failing axioms {:?}", axioms.failures());
                Ok(2)
            }
        }
        Command::LieCohom { lattice, modulus, coefficients } => {
            let l = LieLattice::parse(&read(&lattice)?)?;
            let (p, k) = parse_modulus(&modulus)?;
            let ring = Zpk::new(p, k)?;
            let ce = match coefficients.as_str() {
                "trivial" => ce_complex_trivial(&l, ring)?,
                "adjoint" => ce_complex(&l, &LieModule::adjoint(&l, ring)?)?,
                other => return Err(Error::InvalidInput(format!("unknown coefficients {other:?}"))),
            };
            let mut report = cohomology(&ce, &coefficients);
            report.source = l.provenance.clone();
            emit(&json_out(&serde_json::to_value(&report)?), None)?;
            Ok(0)
        }
        Command::Phi { group, cochain } => {
            let g = build_group(&GroupSpecFile::parse(&read(&group)?)?.to_spec()?)?;
            let lat = lazard_lie(&g)?;
            let exact = lat.lattice.lift_exact();
            let f = AnalyticCochain::parse(&read(&cochain)?)?;
            if f.d != exact.d {
                return Err(Error::InvalidInput(format!("cochain has {} variables per argument, the group has rank {}", f.d, exact.d)));
            }
            let chart = Chart::new(&exact, f.poly.max_degree.clamp(f.arity as u32 + 1, 4))?;
            let df = bar_differential_analytic(&f, &chart)?;
            let phi = lazard_phi(&f);
            let dphi = ce_differential(&exact, &phi);
            let ring = Zpk::new(g.p(), 1)?;
            let class = match phi.reduce(ring) {
                Ok(v) if f.arity <= exact.d => {
                    let ce = ce_complex_trivial(&exact, ring)?;
                    let h = ce.complex.cohomology(f.arity);
                    json!(ce.is_cocycle(f.arity, &v).then(|| h.quotient.is_trivial_class(&v) == Some(false)))
                }
                _ => serde_json::Value::Null,
            };
            let coeffs: serde_json::Map<String, serde_json::Value> = phi
                .terms()
                .into_iter()
                .map(|(idx, c)| {
                    let idx: Vec<String> = idx.iter().map(|b| b.to_string()).collect();
                    (idx.join(","), json!(c.to_string()))
                })
                .collect();
            let v = json!({
                "group": g.describe(),
                "lattice": exact.nonzero(),
                "arity": f.arity,
                "bar_cocycle": df.poly.is_zero(),
                "phi": coeffs,
                "phi_is_ce_cocycle": dphi.is_zero(),
                "nonzero_class_mod_p": class,
            });
            emit(&json_out(&v), None)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Hypothesis(_) | Error::ModuleImage { .. } | Error::LevelBelowRho { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
