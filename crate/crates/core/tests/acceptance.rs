//! One PASS/FAIL line per acceptance criterion, on stderr.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lazardlab_core::filtered::{graded_pieces, FilteredGroup};
use lazardlab_core::group_cohom::{bar_complex, FiniteGroup, FiniteModule};
use lazardlab_core::harness::{run_compare, run_named, ExperimentConfig, NamedParams, Report, Verdict};
use lazardlab_core::lazard_lie::{check_lattice_identity, lattice, lazard_lie, LieLattice};
use lazardlab_core::lazmap::{bar_differential_analytic, AnalyticCochain, Chart};
use lazardlab_core::lie_cohom::ce_complex_trivial;
use lazardlab_core::padic::complex::truncate_exponents;
use lazardlab_core::padic::series::{expm1, log1p};
use lazardlab_core::padic::snf::{snf_int, snf_mod, snf_mod_oracle, snf_oracle, IntMatrix, ModMatrix};
use lazardlab_core::padic::{Algebra, RingSpec, Val, Zpk};
use lazardlab_core::pgroups::{build_group, MatrixGroupSpec};

type Outcome = Result<String, String>;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn named(name: &str, p: Option<u64>) -> Result<Report, String> {
    run_named(name, NamedParams { p, seed: 0, ..NamedParams::default() }).map_err(|e| e.to_string())
}

fn expect_match(r: &Report) -> Outcome {
    match r.verdict() {
        Verdict::Match => Ok(format!("{} checks, {} degree rows", r.hypothesis_checks.len(), r.degrees.len())),
        v => {
            let failed: Vec<_> = r.hypothesis_checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
            Err(format!("{v:?}, failed checks {failed:?}"))
        }
    }
}

fn morava() -> Outcome {
    let r = named("morava", Some(5))?;
    let dims: Vec<usize> = r.degrees.iter().filter_map(|d| d.lie_divisors.as_ref().map(|v| v.len())).collect();
    if dims != [1, 3, 4, 3, 1] {
        return Err(format!("Lie dims {dims:?}"));
    }
    expect_match(&r).map(|s| format!("Lie dims {dims:?}; {s}"))
}

fn exterior() -> Outcome {
    expect_match(&named("exterior", Some(3))?)
}

fn integral() -> Outcome {
    let mut out = Vec::new();
    for name in ["units-z9", "heisenberg-z3", "gl2-adjoint"] {
        let cfg = ExperimentConfig::load(&configs().join(format!("{name}.toml"))).map_err(|e| e.to_string())?;
        let r = run_compare(&cfg).map_err(|e| format!("{name}: {e}"))?;
        expect_match(&r).map_err(|e| format!("{name}: {e}"))?;
        let uncertified: Vec<_> = r.stabilization.iter().filter(|s| !s.stabilized).map(|s| s.fixture.clone()).collect();
        if !uncertified.is_empty() {
            return Err(format!("{name}: not stabilized {uncertified:?}"));
        }
        out.push(format!("{name} ok"));
    }
    Ok(out.join(", "))
}

fn lattice_identity() -> Outcome {
    let cases = [(3, 1, 1, 5), (3, 2, 1, 5), (2, 1, 2, 5)];
    let mut out = Vec::new();
    for (p, n, level, digits) in cases {
        let g = build_group(&MatrixGroupSpec::congruence(p, n, level, digits).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let lat = lazard_lie(&g).map_err(|e| e.to_string())?;
        let v = check_lattice_identity(&lat, level);
        if !v.holds {
            return Err(format!("p={p} n={n}: exponents {:?}", v.exponents));
        }
        out.push(format!("{}^{level} gl_{n}", p));
    }
    Ok(out.join(", "))
}

fn filtration_facts() -> Outcome {
    expect_match(&named("ramified-bases", Some(5))?)
}

fn uniformity() -> Outcome {
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        expect_match(&named("uniformity", Some(p))?).map_err(|e| format!("p={p}: {e}"))?;
        out.push(format!("p={p} ok"));
    }
    Ok(out.join(", "))
}

fn chain_map() -> Outcome {
    expect_match(&named("chainmap", Some(3))?)
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        if case % 2 == 0 {
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-30..=30)).collect()).collect();
            let a = IntMatrix::from_rows(&rows);
            if snf_int(&a, false).divisors != snf_oracle(&a).map_err(|e| e.to_string())? {
                return Err(format!("integer case {case}: {rows:?}"));
            }
        } else {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let ring = Zpk::new(p, rng.gen_range(1..=3)).unwrap();
            let rows: Vec<Vec<u64>> = (0..r)
                .map(|_| (0..c).map(|_| ring.mul(rng.gen_range(0..ring.modulus()), ring.p_pow(rng.gen_range(0..=ring.k())))).collect())
                .collect();
            let a = ModMatrix::from_residues(ring, &rows, c);
            if snf_mod(&a, false).exponents != snf_mod_oracle(&a).map_err(|e| e.to_string())? {
                return Err(format!("modular case {case}: {rows:?}"));
            }
        }
    }
    for case in 0..200 {
        let p = [2u64, 3, 5][case % 3];
        let n = 1 + (case / 3) % 3;
        let alg = Algebra::matrix(&RingSpec::unramified(p, 8).unwrap(), n).unwrap();
        let y: Vec<u64> = (0..alg.dim()).map(|_| rng.gen_range(0..alg.zpk().modulus())).collect();
        let x = alg.scale(if p == 2 { 4 } else { p }, &y);
        let back = log1p(&alg, &x).and_then(|l| expm1(&alg, &l)).map_err(|e| e.to_string())?;
        if back != x {
            return Err(format!("log/exp case {case} p={p} n={n}"));
        }
    }
    Ok("500 SNF, 200 log/exp".into())
}

fn lie_fixtures() -> Vec<(u64, LieLattice)> {
    let mut v: Vec<(u64, LieLattice)> = (1..=3).map(|d| (3, lattice::abelian(d))).collect();
    v.extend([(3, lattice::heisenberg(3)), (5, lattice::quaternion(5, 2)), (3, lattice::scaled_gl(3, 2))]);
    v
}

fn invariants() -> Outcome {
    let mut count = 0;
    for (p, l) in lie_fixtures() {
        if l.defect().is_some() {
            return Err(format!("Jacobi fails on {}", l.provenance));
        }
        let mut exps = Vec::new();
        for k in 1..=3 {
            let ce = ce_complex_trivial(&l, Zpk::new(p, k).unwrap()).map_err(|e| e.to_string())?;
            ce.complex.check_d_squared().map_err(|e| format!("CE {}: {e}", l.provenance))?;
            exps.push(ce.cohomology().iter().map(|h| h.exponents()).collect::<Vec<_>>());
        }
        for k in 1..3 {
            for (lo, hi) in exps[k - 1].iter().zip(&exps[k]) {
                if *lo != truncate_exponents(hi, k as u32) {
                    return Err(format!("truncation fails on {}", l.provenance));
                }
            }
        }
        count += 1;
    }
    for g in [FiniteGroup::cyclic(3, 2).unwrap(), FiniteGroup::abelian(3, 1, 2).unwrap(), FiniteGroup::heisenberg_mod_p(3).unwrap()] {
        let m = FiniteModule::trivial(Zpk::new(3, 2).unwrap(), 1, g.ngens());
        let deg = if g.order <= 9 { 3 } else { 1 };
        bar_complex(&g, &m, deg, 1 << 22).map_err(|e| e.to_string())?.complex.check_d_squared().map_err(|e| e.to_string())?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for l in [lattice::abelian(2), lattice::heisenberg(3), lattice::scaled_gl(3, 2)] {
        let chart = Chart::new(&l, 4).map_err(|e| e.to_string())?;
        for arity in 1..=2 {
            let f = AnalyticCochain::random(&mut rng, arity, l.d, 2, 4);
            let dd = bar_differential_analytic(&f, &chart).and_then(|df| bar_differential_analytic(&df, &chart));
            if !dd.map_err(|e| e.to_string())?.poly.is_zero() {
                return Err(format!("analytic d² on {}", l.provenance));
            }
        }
        count += 1;
    }
    for spec in [
        MatrixGroupSpec::congruence(3, 2, 1, 8).unwrap(),
        MatrixGroupSpec::heisenberg(3, 8).unwrap(),
        MatrixGroupSpec::quaternion(5, 8).unwrap(),
        MatrixGroupSpec::new(RingSpec::pure(5, 2, 8).unwrap(), 1, 1),
    ] {
        let g = build_group(&spec).map_err(|e| e.to_string())?;
        let lat = lazard_lie(&g).map_err(|e| e.to_string())?;
        if lat.lattice.defect().is_some() {
            return Err(format!("Jacobi fails on {}", g.describe()));
        }
        let vals: Vec<_> = lat.frame.deltas().iter().map(|d| g.layout().val(d)).collect();
        for piece in graded_pieces(&g, g.min_valuation() + 2).map_err(|e| e.to_string())? {
            let dim = vals.iter().filter(|v| matches!(v, Val::Exact(x) if *x <= piece.nu && (piece.nu - *x).is_integer())).count();
            if dim != piece.dim {
                return Err(format!("gr mismatch on {} at {}", g.describe(), piece.nu));
            }
        }
        count += 1;
    }
    Ok(format!("{count} fixtures"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 morava Betti numbers", morava),
        ("2 exterior algebra law", exterior),
        ("3 integral comparison", integral),
        ("4 lattice identity", lattice_identity),
        ("5 filtration facts", filtration_facts),
        ("6 uniformity", uniformity),
        ("7 chain map", chain_map),
        ("8 oracle equivalence", oracles),
        ("9 invariant suites", invariants),
    ];
    let mut failed = Vec::new();
    writeln!(std::io::stderr()).unwrap();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        // written past the test harness capture so the lines always show
        let line = match &outcome {
            Ok(detail) => format!("PASS {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed.push(name);
                format!("FAIL {name} ({secs:.1}s): {detail}")
            }
        };
        writeln!(std::io::stderr(), "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
