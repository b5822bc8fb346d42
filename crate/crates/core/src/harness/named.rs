//! The registered experiments.

use serde_json::json;

use super::compare::{compare_fixture, group_hypotheses};
use super::{binomial, divisors, Check, DegreeComparison, Report, GLOBAL_CAP};
use crate::error::{Error, Result};
use crate::filtered::{check_filtration_on, FiltrationReport, find_ordered_basis, Elem, FilteredGroup};
use crate::group_cohom::{continuous_cohomology, degree_one_cup_span, StableOptions};
use crate::lazard_lie::{lattice, lazard_lie, Coefficients, LieLattice, LieModule};
use crate::lazmap::{ce_differential, chain_map_check, heisenberg_cocycle, lazard_phi, Chart};
use crate::lie_cohom::{betti_mod_p, ce_complex_trivial, CEComplex};
use crate::padic::kernel::Subquotient;
use crate::padic::snf::ModMatrix;
use crate::padic::{RingSpec, Zpk};
use crate::pgroups::{build_group, check_uniform, renormalize_valuation, MatrixGroupSpec};

pub const EXPERIMENTS: [&str; 5] = ["morava", "exterior", "ramified-bases", "uniformity", "chainmap"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NamedParams {
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub max_degree: Option<usize>,
    pub seed: u64,
}

pub fn run_named(name: &str, params: NamedParams) -> Result<Report> {
    match name {
        "morava" => morava(params),
        "exterior" => exterior(params),
        "ramified-bases" => ramified_bases(params),
        "uniformity" => uniformity(params),
        "chainmap" => chainmap(params),
        other => Err(Error::InvalidInput(format!("unknown experiment {other:?}; known: {}", EXPERIMENTS.join(", ")))),
    }
}

fn empty_report(name: &str, p: u64, e: u32, precision: u32, seed: u64) -> Report {
    Report {
        experiment: name.to_string(),
        p,
        e,
        precision,
        degrees: Vec::new(),
        hypothesis_checks: Vec::new(),
        stabilization: Vec::new(),
        seed,
        details: json!({}),
    }
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `1 + ΠO` in the quaternion order: Lie-side Betti numbers in all degrees,
/// group side in degrees ≤ 1.
fn morava(params: NamedParams) -> Result<Report> {
    let p = params.p.unwrap_or(5);
    let precision = params.precision.unwrap_or(8);
    let g = build_group(&MatrixGroupSpec::quaternion(p, precision)?)?;
    let mut r = empty_report("morava", p, g.ramification(), precision, params.seed);
    let basis = find_ordered_basis(&g)?;
    let axioms = check_filtration_on(&g, 40, params.seed, &basis.elements);
    r.hypothesis_checks.push(Check::hypothesis("p-valued filtration", axioms.p_valued(), axiom_detail(&axioms)));
    r.hypothesis_checks.push(Check::expectation(
        "not equi-p-valued",
        !basis.equi_p_valued,
        format!("basis valuations {:?}", strs(&basis.valuations)),
    ));
    let lat = lazard_lie(&g)?;
    let ring = Zpk::new(p, 1)?;
    let ce = ce_complex_trivial(&lat.lattice, ring)?;
    let lie: Vec<Vec<u32>> = ce.cohomology().iter().map(|h| h.exponents()).collect();
    let dims: Vec<usize> = lie.iter().map(|e| e.len()).collect();
    let by_rank = betti_mod_p(&lat.lattice, &LieModule::trivial(lat.lattice.d, 1, ring))?;
    r.hypothesis_checks.push(Check::expectation(
        "mod-p Betti numbers 1,3,4,3,1",
        dims == [1, 3, 4, 3, 1],
        format!("computed {dims:?}"),
    ));
    r.hypothesis_checks.push(Check::expectation(
        "rank count agrees with SNF",
        by_rank == dims,
        format!("ranks give {by_rank:?}"),
    ));
    let max_degree = params.max_degree.unwrap_or(1).min(1);
    let id = |_: &Elem| Ok(ModMatrix::identity(ring, 1));
    let group = continuous_cohomology(&g, ring, 1, &id, max_degree, StableOptions { cap: GLOBAL_CAP, gap: None })?;
    for (i, le) in lie.iter().enumerate() {
        let ge = group.degrees.get(i).map(|d| d.exponents.clone());
        r.degrees.push(DegreeComparison {
            fixture: "quaternion".into(),
            i,
            matches: ge.as_ref().is_none_or(|ge| ge == le),
            group_divisors: ge.map(|e| divisors(p, &e)),
            lie_divisors: Some(divisors(p, le)),
        });
    }
    r.stabilization.push(super::Stabilization {
        fixture: "quaternion".into(),
        first_level: group.first_level,
        top_level: group.top_level,
        stabilization_level: group.stabilization_level,
        stabilized: group.stabilized(),
        certified: false,
    });
    r.details = json!({
        "group": g.describe(),
        "lie_structure_constants": lat.lattice.nonzero(),
        "lie_valuations": strs(&lat.lattice.valuations),
    });
    Ok(r)
}

/// Span of all i-fold wedges of degree-one classes, in `H^i`.
fn lie_cup_spans(ce: &CEComplex) -> Result<Vec<usize>> {
    let ring = ce.ring();
    let reps = ce.complex.cohomology(1).quotient.representatives().to_vec();
    let mut spans = vec![1usize];
    let mut layer: Vec<Vec<u64>> = vec![{
        let mut one = vec![0u64; ce.complex.dims[0]];
        one[0] = 1;
        one
    }];
    for i in 1..=ce.top() {
        let mut next = Vec::new();
        for a in &layer {
            for b in &reps {
                next.push(ce.cup(i - 1, a, 1, b)?);
            }
        }
        let bnd = ce.complex.coboundaries(i);
        let mut gens = next.clone();
        gens.extend(bnd.iter().cloned());
        spans.push(Subquotient::new(ring, ce.complex.dims[i], &gens, &bnd).dim_mod_p());
        layer = next;
    }
    Ok(spans)
}

/// Heisenberg and `(1+pZ_p)^d`, `d ≤ 3`, with trivial `Z/p`.
fn exterior(params: NamedParams) -> Result<Report> {
    let p = params.p.unwrap_or(3);
    let precision = params.precision.unwrap_or(8);
    let max_degree = params.max_degree.unwrap_or(2).min(2);
    let mut r = empty_report("exterior", p, 1, precision, params.seed);
    let ring = Zpk::new(p, 1)?;
    let opts = StableOptions { cap: p.pow(7).min(GLOBAL_CAP), gap: None };
    let mut fixtures = vec![("heisenberg".to_string(), MatrixGroupSpec::heisenberg(p, precision)?)];
    for d in 1..=3 {
        fixtures.push((format!("torus-{d}"), MatrixGroupSpec::torus(p, d, precision)?));
    }
    let mut details = serde_json::Map::new();
    for (name, spec) in fixtures {
        let g = build_group(&spec)?;
        for mut c in group_hypotheses(&g, params.seed)? {
            c.name = format!("{name}: {}", c.name);
            r.hypothesis_checks.push(c);
        }
        let lat = lazard_lie(&g)?;
        let d = lat.lattice.d;
        let fc = compare_fixture(&name, &g, &lat, ring, Coefficients::Trivial { rank: 1 }, max_degree, opts)?;
        let lie_dims: Vec<usize> = fc.lie_exponents.iter().map(|e| e.len()).collect();
        let want: Vec<usize> = (0..=d).map(|i| binomial(d, i)).collect();
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: Lie-side dims are binomial"),
            lie_dims == want,
            format!("computed {lie_dims:?}, expected {want:?}"),
        ));
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: group side certified by the exterior algebra"),
            fc.group.certified,
            format!("group dims {:?}", fc.group.dims_mod_p()),
        ));
        let ce = ce_complex_trivial(&lat.lattice, ring)?;
        let spans = lie_cup_spans(&ce)?;
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: Lie-side wedges of degree-one classes span"),
            spans == want,
            format!("spans {spans:?}"),
        ));
        let mut fixture_details = json!({ "group": g.describe(), "lie_dims": lie_dims, "lie_cup_spans": spans });
        if d >= 2 && max_degree >= 2 {
            let cs = degree_one_cup_span(&g, opts)?;
            r.hypothesis_checks.push(Check::expectation(
                format!("{name}: group-side cups of degree-one classes span"),
                cs.h1_dim == d && cs.span_dim == binomial(d, 2),
                format!("H^1 dim {}, span of cups {}", cs.h1_dim, cs.span_dim),
            ));
            fixture_details["group_cup_span"] = json!(cs);
        }
        details.insert(name, fixture_details);
        r.degrees.extend(fc.degrees);
        r.stabilization.push(fc.stabilization);
    }
    r.details = serde_json::Value::Object(details);
    Ok(r)
}

/// `a + bπ` with `π² = p`, written in powers of π.
fn pi_adic(p: u64, coords: &[u64], modulus: u64) -> String {
    let mut terms = Vec::new();
    for (shift, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut c = c;
        let mut s = 0;
        while c % p == 0 && c < modulus {
            c /= p;
            s += 1;
        }
        let pow = 2 * s + shift;
        let unit = if c == 1 { String::new() } else { format!("{c}*") };
        terms.push(match pow {
            0 => c.to_string(),
            1 => format!("{unit}pi"),
            _ => format!("{unit}pi^{pow}"),
        });
    }
    format!("1+{}", terms.join("+"))
}

/// Ordered bases of `1 + πR` and of `1 + pR` with `R = Z_p[π]`, `π² = p`.
fn ramified_bases(params: NamedParams) -> Result<Report> {
    let p = params.p.unwrap_or(5);
    if p < 5 {
        return Err(Error::InvalidInput("ramified-bases needs p >= 5".into()));
    }
    let precision = params.precision.unwrap_or(8);
    let ring = RingSpec::pure(p, 2, precision)?;
    let mut r = empty_report("ramified-bases", p, 2, precision, params.seed);
    let modulus = ring.zpk().modulus();
    let g = build_group(&MatrixGroupSpec::new(ring.clone(), 1, 1))?;
    let gw = build_group(&MatrixGroupSpec::new(ring.clone(), 1, 2).weil())?;
    let mut tables = Vec::new();
    for (label, grp, want_vals, want_elems) in [
        ("omega", &g, ["1/2", "1"], ["1+pi", "1+pi^2"]),
        ("omega-prime", &gw, ["1", "1"], ["1+pi^2", "1+pi^3"]),
    ] {
        let b = find_ordered_basis(grp)?;
        let vals = strs(&b.valuations);
        let elems: Vec<String> = b.elements.iter().map(|x| pi_adic(p, x, modulus)).collect();
        let ax = check_filtration_on(grp, 40, params.seed, &b.elements);
        r.hypothesis_checks.push(Check::hypothesis(format!("{label}: p-valued filtration"), ax.p_valued(), axiom_detail(&ax)));
        r.hypothesis_checks.push(Check::expectation(format!("{label}: basis valuations"), vals == want_vals, format!("{vals:?}")));
        r.hypothesis_checks.push(Check::expectation(format!("{label}: basis elements"), elems == want_elems, format!("{elems:?}")));
        tables.push(json!({ "filtration": label, "group": grp.describe(), "basis": elems, "valuations": vals, "equi_p_valued": b.equi_p_valued }));
    }
    // rank n²[R:Z_p] for 1 + π^ρ M_n(R)
    let mut ranks = Vec::new();
    for (q, n) in [(p, 1usize), (p, 2), (3, 1), (3, 2)] {
        let ring = RingSpec::pure(q, 2, precision)?;
        let level = ring.rho();
        let grp = build_group(&MatrixGroupSpec::new(ring, n, level))?;
        let b = find_ordered_basis(&grp)?;
        let ax = check_filtration_on(&grp, 30, params.seed, &b.elements);
        let name = format!("1+pi^{level}M_{n}(Z_{q}[pi])");
        r.hypothesis_checks.push(Check::hypothesis(format!("{name}: p-valued filtration"), ax.p_valued(), axiom_detail(&ax)));
        r.hypothesis_checks.push(Check::expectation(format!("{name}: rank n^2 [R:Z_p]"), b.rank() == 2 * n * n, format!("rank {}", b.rank())));
        ranks.push(json!({ "group": name, "rank": b.rank(), "valuations": strs(&b.valuations) }));
    }
    r.details = json!({ "bases": tables, "ranks": ranks });
    Ok(r)
}

/// ω-jumps against the lower p-series, and the renormalized valuation.
fn uniformity(params: NamedParams) -> Result<Report> {
    let p = params.p.unwrap_or(3);
    if p == 2 {
        return Err(Error::InvalidInput("uniformity runs at odd p".into()));
    }
    let precision = params.precision.unwrap_or(8);
    let mut r = empty_report("uniformity", p, 1, precision, params.seed);
    let mut specs = vec![
        MatrixGroupSpec::congruence(p, 1, 1, precision)?,
        MatrixGroupSpec::congruence(p, 1, 2, precision)?,
        MatrixGroupSpec::congruence(p, 2, 1, precision)?,
        MatrixGroupSpec::heisenberg(p, precision)?,
        MatrixGroupSpec::torus(p, 2, precision)?,
    ];
    if p >= 5 {
        specs.push(MatrixGroupSpec::new(RingSpec::pure(p, 2, 2 * precision)?, 1, 2).weil());
    }
    let mut rows = Vec::new();
    for spec in specs {
        let g = build_group(&spec)?;
        let name = g.describe();
        let b = find_ordered_basis(&g)?;
        let Some(t) = b.common_valuation() else {
            r.hypothesis_checks.push(Check::hypothesis(format!("{name}: equi-p-valued"), false, "no common basis valuation"));
            continue;
        };
        let u = check_uniform(&g, 4)?;
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: omega jumps equal the lower p-series"),
            u.omega_matches_series == Some(true),
            format!("{:?}", u.omega_matches_series),
        ));
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: constant indices"),
            u.constant_indices && u.indices.iter().all(|&i| i == b.rank()),
            format!("indices {:?}, rank {}", u.indices, b.rank()),
        ));
        r.hypothesis_checks.push(Check::expectation(format!("{name}: uniform"), u.uniform, format!("powerful {}", u.powerful)));
        let w = renormalize_valuation(&g, t)?;
        let bw = find_ordered_basis(&w)?;
        let ax = check_filtration_on(&w, 40, params.seed, &bw.elements);
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: renormalized valuation is p-valued"),
            ax.p_valued(),
            axiom_detail(&ax),
        ));
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: renormalized basis valuation 1"),
            bw.common_valuation() == Some(crate::padic::qi(1)),
            format!("{:?}", strs(&bw.valuations)),
        ));
        rows.push(json!({ "group": name, "basis_valuation": t.to_string(), "uniformity": u }));
    }
    r.details = json!({ "fixtures": rows });
    Ok(r)
}

/// `Φ ∘ d_bar = d_CE ∘ Φ` on random cochains, and the Heisenberg 2-cocycle.
fn chainmap(params: NamedParams) -> Result<Report> {
    let p = params.p.unwrap_or(3);
    let precision = params.precision.unwrap_or(8);
    let mut r = empty_report("chainmap", p, 1, precision, params.seed);
    const SAMPLES: usize = 50;
    // exact lattices must agree with the ones extracted from the groups
    let exact = [
        ("abelian", lattice::abelian(3), build_group(&MatrixGroupSpec::torus(p, 3, precision)?)?),
        ("heisenberg", lattice::heisenberg(p), build_group(&MatrixGroupSpec::heisenberg(p, precision)?)?),
        ("gl2", lattice::scaled_gl(p, 2), build_group(&MatrixGroupSpec::congruence(p, 2, 1, precision)?)?),
    ];
    let mut verdicts = Vec::new();
    for (name, l, g) in exact {
        let extracted = lazard_lie(&g)?.lattice.lift_exact();
        r.hypothesis_checks.push(Check::hypothesis(
            format!("{name}: exact lattice matches the extracted one up to units"),
            same_up_to_units(p, &l, &extracted),
            format!("{:?}", extracted.nonzero()),
        ));
        let chart = Chart::new(&l, 4)?;
        let v = chain_map_check(&chart, SAMPLES, params.seed)?;
        r.hypothesis_checks.push(Check::expectation(
            format!("{name}: chain map on {SAMPLES} random cochains"),
            v.holds,
            v.failures.first().cloned().unwrap_or_default(),
        ));
        verdicts.push(v);
    }
    let heis = lattice::heisenberg(p);
    let c = heisenberg_cocycle(4);
    let chart = Chart::new(&heis, 4)?;
    let dc = crate::lazmap::bar_differential_analytic(&c, &chart)?;
    let phi = lazard_phi(&c);
    let ring = Zpk::new(p, 1)?;
    let ce = ce_complex_trivial(&heis, ring)?;
    let v = phi.reduce(ring)?;
    let h2 = ce.complex.cohomology(2);
    let nontrivial = ce.is_cocycle(2, &v) && h2.quotient.is_trivial_class(&v) == Some(false);
    r.hypothesis_checks.push(Check::expectation("heisenberg cocycle is a bar cocycle", dc.poly.is_zero(), ""));
    r.hypothesis_checks.push(Check::expectation(
        "heisenberg cocycle has a nonzero Lie class",
        nontrivial && ce_differential(&heis, &phi).is_zero(),
        format!("phi = {:?}", strs(&phi.coeffs)),
    ));
    r.details = json!({ "chain_map": verdicts, "heisenberg_cocycle": c.to_text(), "phi": strs(&phi.coeffs) });
    Ok(r)
}

/// Same nonzero pattern and the same p-adic valuation of every constant: the
/// extracted basis `log x_i` differs from the exact one by unit rescalings.
fn same_up_to_units(p: u64, a: &LieLattice, b: &LieLattice) -> bool {
    let key = |l: &LieLattice| -> Vec<(usize, usize, usize, u32)> {
        l.nonzero().into_iter().map(|(i, j, k, c)| (i, j, k, crate::padic::modint::vp_int(p, c as i128))).collect()
    };
    a.d == b.d && key(a) == key(b)
}

/// Axioms that did not come out as holding, with their status.
fn axiom_detail(r: &FiltrationReport) -> String {
    let bad: Vec<String> = r
        .axioms
        .iter()
        .filter(|(_, v)| v.status != crate::filtered::AxiomStatus::Holds)
        .map(|(a, v)| format!("{}: {:?}", a.label(), v.status))
        .collect();
    if bad.is_empty() {
        "all axioms hold".into()
    } else {
        bad.join("; ")
    }
}
