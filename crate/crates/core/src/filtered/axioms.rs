//! Sampled verification of the filtration axioms.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Elem, FilteredGroup};
use crate::padic::{qi, QStr, Val, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AxiomId {
    /// `ω(xy⁻¹) >= min(ω(x), ω(y))`
    #[serde(rename = "1")]
    Ultrametric,
    /// `ω([x,y]) >= ω(x) + ω(y)`
    #[serde(rename = "2")]
    Commutator,
    /// `ω(x^p) >= min(ω(x) + 1, p ω(x))`
    #[serde(rename = "p")]
    PFiltered,
    /// `ω(x) < ∞` for `x != e`
    #[serde(rename = "3")]
    Separated,
    /// `ω(x) > 1/(p-1)`
    #[serde(rename = "4")]
    AboveBound,
    /// `ω(x^p) = ω(x) + 1`
    #[serde(rename = "5")]
    PowerShift,
    /// `x` is a p-th power whenever `ω(x) > 1 + 1/(p-1)`
    #[serde(rename = "6")]
    Divisible,
    /// completeness
    #[serde(rename = "7")]
    Complete,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::Ultrametric,
        AxiomId::Commutator,
        AxiomId::PFiltered,
        AxiomId::Separated,
        AxiomId::AboveBound,
        AxiomId::PowerShift,
        AxiomId::Divisible,
        AxiomId::Complete,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            AxiomId::Ultrametric => "1",
            AxiomId::Commutator => "2",
            AxiomId::PFiltered => "p",
            AxiomId::Separated => "3",
            AxiomId::AboveBound => "4",
            AxiomId::PowerShift => "5",
            AxiomId::Divisible => "6",
            AxiomId::Complete => "7",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomStatus {
    Holds,
    Fails,
    NotApplicable,
    /// Asserted by construction, not sampled.
    Declared,
    /// No failure seen, but some comparisons could not be decided at precision.
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub status: AxiomStatus,
    pub checked: usize,
    pub undecided: usize,
    /// The first failing tuple, as coordinate vectors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomResult {
    fn new() -> Self {
        AxiomResult { status: AxiomStatus::Holds, checked: 0, undecided: 0, witness: None, note: None }
    }

    fn record(&mut self, verdict: Option<bool>, witness: impl FnOnce() -> Vec<Elem>) {
        self.checked += 1;
        match verdict {
            Some(true) => {}
            Some(false) => {
                if self.witness.is_none() {
                    self.witness = Some(witness());
                }
            }
            None => self.undecided += 1,
        }
    }

    fn finish(&mut self) {
        if self.status != AxiomStatus::Holds {
            return;
        }
        self.status = if self.witness.is_some() {
            AxiomStatus::Fails
        } else if self.undecided > 0 {
            AxiomStatus::Undecided
        } else if self.checked == 0 {
            AxiomStatus::NotApplicable
        } else {
            AxiomStatus::Holds
        };
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub group: String,
    pub seed: u64,
    pub sample_size: usize,
    pub axioms: BTreeMap<AxiomId, AxiomResult>,
    pub value_set: Vec<QStr>,
    /// Samples that were the identity at working precision.
    pub skipped_identity: usize,
}

impl FiltrationReport {
    pub fn status(&self, id: AxiomId) -> AxiomStatus {
        self.axioms[&id].status
    }

    pub fn holds(&self, id: AxiomId) -> bool {
        matches!(self.status(id), AxiomStatus::Holds | AxiomStatus::Declared)
    }

    /// Every axiom holds (7 by declaration).
    pub fn p_valued(&self) -> bool {
        AxiomId::ALL.iter().all(|&a| self.holds(a))
    }

    pub fn failures(&self) -> Vec<AxiomId> {
        self.axioms.iter().filter(|(_, r)| r.status == AxiomStatus::Fails).map(|(&a, _)| a).collect()
    }
}

pub fn check_filtration(g: &dyn FilteredGroup, samples: usize, seed: u64) -> FiltrationReport {
    check_filtration_on(g, samples, seed, &[])
}

/// As `check_filtration`, with extra elements checked exhaustively for the
/// single-element axioms (and pairwise for their products).
pub fn check_filtration_on(g: &dyn FilteredGroup, samples: usize, seed: u64, extra: &[Elem]) -> FiltrationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = g.p();
    let bound = Q::new(1, p as i64 - 1);
    let mut res: BTreeMap<AxiomId, AxiomResult> = AxiomId::ALL.iter().map(|&a| (a, AxiomResult::new())).collect();
    let mut values = BTreeSet::new();
    let mut skipped = 0;

    let mut pool: Vec<Elem> = Vec::with_capacity(samples);
    while pool.len() < samples {
        let x = g.random_element(&mut rng);
        if g.is_identity(&x) {
            skipped += 1;
            if skipped > 10 * samples + 100 {
                break;
            }
            continue;
        }
        pool.push(x);
    }

    let mut singles: Vec<Elem> = pool.clone();
    for (i, a) in extra.iter().enumerate() {
        singles.push(a.clone());
        for b in &extra[i + 1..] {
            singles.push(g.mul(a, b));
        }
    }

    for (i, x) in pool.iter().enumerate() {
        let y = &pool[(i * 7 + 3) % pool.len()];
        let (wx, wy) = (g.omega(x), g.omega(y));
        let (Some(ax), Some(ay)) = (wx.exact(), wy.exact()) else { continue };
        let d = g.mul(x, &g.inv(y));
        res.get_mut(&AxiomId::Ultrametric).unwrap().record(g.omega(&d).ge(ax.min(ay)), || vec![x.clone(), y.clone()]);
        // pairs whose bound lies beyond the working precision say nothing
        if ax + ay >= g.precision() {
            continue;
        }
        let c = g.commutator(x, y);
        res.get_mut(&AxiomId::Commutator).unwrap().record(g.omega(&c).ge(ax + ay), || vec![x.clone(), y.clone()]);
    }

    for x in &singles {
        let wx = g.omega(x);
        let r3 = res.get_mut(&AxiomId::Separated).unwrap();
        if g.is_identity(x) {
            continue;
        }
        r3.record(Some(!wx.is_bottom()), || vec![x.clone()]);
        let Some(ax) = wx.exact() else { continue };
        values.insert(ax);
        res.get_mut(&AxiomId::AboveBound).unwrap().record(Some(ax > bound), || vec![x.clone()]);
        if ax + 1 >= g.precision() {
            continue;
        }
        let xp = g.pow_p(x);
        let wp = g.omega(&xp);
        let pf = (ax + 1).min(ax * qi(p as i64));
        res.get_mut(&AxiomId::PFiltered).unwrap().record(wp.ge(pf), || vec![x.clone()]);
        let shift = match wp {
            Val::Exact(v) => Some(v == ax + 1),
            Val::AtLeast(b) if b > ax + 1 => Some(false),
            Val::AtLeast(_) => None,
        };
        res.get_mut(&AxiomId::PowerShift).unwrap().record(shift, || vec![x.clone()]);
    }

    // p-divisibility needs elements of large filtration; use p-th powers and
    // products of them alongside the plain samples.
    let threshold = qi(1) + bound;
    let mut cands: Vec<Elem> = singles.clone();
    for (i, x) in pool.iter().enumerate() {
        let xp = g.pow_p(x);
        let yp = g.pow_p(&pool[(i * 5 + 1) % pool.len()]);
        cands.push(g.mul(&xp, &yp));
        cands.push(xp);
    }
    let r6 = res.get_mut(&AxiomId::Divisible).unwrap();
    for x in &cands {
        match g.omega(x) {
            Val::Exact(v) if v > threshold => {}
            _ => continue,
        }
        match g.pth_root(x) {
            Ok(Some(y)) => {
                let ok = g.contains(&y) && g.pow_p(&y) == *x;
                r6.record(Some(ok), || vec![x.clone(), y.clone()]);
            }
            Ok(None) => r6.record(Some(false), || vec![x.clone()]),
            Err(e) => {
                r6.record(None, Vec::new);
                r6.note.get_or_insert_with(|| e.to_string());
            }
        }
    }

    // structural lower bound over the whole group, not just samples
    let r4 = res.get_mut(&AxiomId::AboveBound).unwrap();
    if g.min_valuation() <= bound && r4.witness.is_none() {
        r4.note = Some(format!("minimum filtration {} is not above 1/(p-1)", g.min_valuation()));
        r4.checked += 1;
        r4.witness = Some(g.degree_generators(g.min_valuation()).into_iter().take(1).collect());
    }

    let r7 = res.get_mut(&AxiomId::Complete).unwrap();
    if g.complete_by_construction() {
        r7.status = AxiomStatus::Declared;
        r7.note = Some("complete by construction; not sampled".into());
    } else {
        r7.status = AxiomStatus::Undecided;
    }

    for r in res.values_mut() {
        r.finish();
    }
    FiltrationReport {
        group: g.describe(),
        seed,
        sample_size: pool.len(),
        axioms: res,
        value_set: values.into_iter().map(QStr).collect(),
        skipped_identity: skipped,
    }
}
