//! Group side against Lie side, degree by degree.

use serde_json::json;

use super::{binomial, divisors, Check, DegreeComparison, ExperimentConfig, Report, Stabilization};
use crate::error::{Error, Result};
use crate::filtered::{check_filtration_on, find_ordered_basis, Elem, FilteredGroup};
use crate::group_cohom::{continuous_cohomology, StableOptions, StabilizedCohomology};
use crate::lazard_lie::{lazard_lie, Coefficients, GroupModule, LazardLattice};
use crate::lie_cohom::{ce_complex, cohomology};
use crate::padic::Zpk;
use crate::pgroups::{build_group, check_uniform, UnitGroup};

/// Filtration axioms, equi-p-valuedness and uniformity of `g`.
pub(crate) fn group_hypotheses(g: &UnitGroup, seed: u64) -> Result<Vec<Check>> {
    let basis = find_ordered_basis(g)?;
    let axioms = check_filtration_on(g, 40, seed, &basis.elements);
    let fails: Vec<&str> = axioms.failures().iter().map(|a| a.label()).collect();
    let vals: Vec<String> = basis.valuations.iter().map(|v| v.to_string()).collect();
    let uni = check_uniform(g, 3)?;
    Ok(vec![
        Check::hypothesis("p-valued filtration", axioms.p_valued(), format!("failing axioms: {fails:?}")),
        Check::hypothesis("equi-p-valued", basis.equi_p_valued, format!("basis valuations {vals:?}")),
        Check::hypothesis(
            "uniform",
            uni.uniform,
            format!("powerful {}, lower p-series indices {:?}", uni.powerful, uni.indices),
        ),
    ])
}

/// Module image condition: `ρ ≡ 1 mod p` (mod 4 for p = 2) on the basis.
pub(crate) fn module_hypothesis(gm: &GroupModule<'_>) -> Check {
    match gm.induced() {
        Ok(_) => Check::hypothesis("module image", true, format!("{} acts through 1 + p End(M)", gm.coeffs)),
        Err(e) => Check::hypothesis("module image", false, e.to_string()),
    }
}

pub(crate) struct FixtureComparison {
    pub degrees: Vec<DegreeComparison>,
    pub stabilization: Stabilization,
    pub group: StabilizedCohomology,
    pub lie_exponents: Vec<Vec<u32>>,
}

/// Both sides for one group and coefficient module. Certifies the group side
/// against the exterior algebra (trivial `Z/p`) or the abelian closed form.
pub(crate) fn compare_fixture(
    fixture: &str,
    g: &UnitGroup,
    lat: &LazardLattice,
    ring: Zpk,
    coeffs: Coefficients,
    max_degree: usize,
    opts: StableOptions,
) -> Result<FixtureComparison> {
    let gm = GroupModule::new(g, lat, ring, coeffs)?;
    let lm = gm.induced()?;
    let ce = ce_complex(&lat.lattice, &lm)?;
    let lie = cohomology(&ce, &coeffs.to_string());
    let lie_exponents: Vec<Vec<u32>> = lie.degrees.iter().map(|d| d.exponents.clone()).collect();
    let act = |x: &Elem| gm.action(x);
    let mut group = continuous_cohomology(g, ring, gm.rank(), &act, max_degree, opts)?;
    let d = lat.lattice.d;
    if let Coefficients::Trivial { rank: 1 } = coeffs {
        if ring.k() == 1 || lat.lattice.is_abelian() {
            let expected: Vec<Vec<u32>> = (0..=max_degree).map(|i| vec![ring.k(); binomial(d, i)]).collect();
            group.certify(&expected);
        }
    }
    let p = ring.p();
    let degrees = (0..=max_degree)
        .map(|i| {
            let ge = &group.degrees[i].exponents;
            let le = lie_exponents.get(i).cloned().unwrap_or_default();
            DegreeComparison {
                fixture: fixture.to_string(),
                i,
                group_divisors: Some(divisors(p, ge)),
                lie_divisors: Some(divisors(p, &le)),
                matches: *ge == le,
            }
        })
        .collect();
    let stabilization = Stabilization {
        fixture: fixture.to_string(),
        first_level: group.first_level,
        top_level: group.top_level,
        stabilization_level: group.stabilization_level,
        stabilized: group.stabilized(),
        certified: group.certified,
    };
    Ok(FixtureComparison { degrees, stabilization, group, lie_exponents })
}

/// Runs both pipelines for a config and compares elementary divisors.
pub fn run_compare(cfg: &ExperimentConfig) -> Result<Report> {
    let gspec = cfg.group.as_ref().ok_or_else(|| Error::InvalidInput("config names no group".into()))?;
    let spec = gspec.to_spec()?;
    let g = build_group(&spec)?;
    let (p, k) = super::parse_modulus(&cfg.modulus)?;
    if p != spec.ring.p {
        return Err(Error::InvalidInput(format!("modulus {} does not match p = {}", cfg.modulus, spec.ring.p)));
    }
    let ring = Zpk::new(p, k)?;
    let coeffs: Coefficients = cfg.coefficients.parse()?;
    let mut report = Report {
        experiment: cfg.name.clone(),
        p,
        e: spec.ring.e,
        precision: spec.ring.precision_n,
        degrees: Vec::new(),
        hypothesis_checks: group_hypotheses(&g, cfg.seed)?,
        stabilization: Vec::new(),
        seed: cfg.seed,
        details: json!({ "group": g.describe(), "coefficients": coeffs.to_string(), "modulus": format!("{p}^{k}") }),
    };
    if report.hypothesis_checks.iter().any(|c| !c.passed) {
        return Ok(report);
    }
    let lat = lazard_lie(&g)?;
    let gm = GroupModule::new(&g, &lat, ring, coeffs)?;
    let mh = module_hypothesis(&gm);
    let ok = mh.passed;
    report.hypothesis_checks.push(mh);
    if !ok {
        return Ok(report);
    }
    let opts = StableOptions { cap: cfg.cap, gap: cfg.gap };
    let fc = compare_fixture(&cfg.name, &g, &lat, ring, coeffs, cfg.max_degree, opts)?;
    report.degrees = fc.degrees;
    report.stabilization.push(fc.stabilization);
    report.details["lie_structure_constants"] = json!(lat.lattice.nonzero());
    report.details["lie_all_degrees"] = json!(fc.lie_exponents.iter().map(|e| divisors(p, e)).collect::<Vec<_>>());
    report.details["inflation_images"] = json!(fc.group.degrees);
    Ok(report)
}
