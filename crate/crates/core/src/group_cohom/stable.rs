//! Continuous cohomology as a limit over finite quotients.
//!
//! `H^i_c(G, M)` is the colimit of `H^i(Q_j, M)` under inflation. For a fixed
//! top level `s`, the images `E(j, s)` of `H^i(Q_j) → H^i(Q_s)` increase with
//! j; a class that dies further up still shows in `E(s-1, s)`, so the reported
//! value is `E(s - gap, s)` and it counts as stabilized when `E(s - gap - 1, s)`
//! has the same structure. Each refinement step enlarges one generator, and a
//! Bockstein-type class mod `p^k` needs k enlargements of its generator to die,
//! so the default gap is `k` times the number of generators (1 when only
//! degrees ≤ 1 are asked for).

use serde::Serialize;

use super::cayley::CayleyModel;
use super::finite::{FiniteGroup, FiniteModule};
use crate::error::{Error, Result};
use crate::filtered::{Elem, FilteredGroup};
use crate::padic::kernel::Subquotient;
use crate::padic::snf::ModMatrix;
use crate::padic::Zpk;
use crate::pgroups::QuotientTower;

#[derive(Clone, Copy, Debug)]
pub struct StableOptions {
    /// Largest quotient order.
    pub cap: u64,
    /// Refinement steps between the reported level and the top; `None` for the default.
    pub gap: Option<usize>,
}

impl Default for StableOptions {
    fn default() -> Self {
        StableOptions { cap: 2187, gap: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageEntry {
    pub from: usize,
    pub to: usize,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableDegree {
    pub i: usize,
    pub exponents: Vec<u32>,
    pub stabilized: bool,
    pub images: Vec<ImageEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizedCohomology {
    pub group: String,
    pub p: u64,
    pub k: u32,
    /// Smallest quotient level `j` used (`|Q_j| = p^j`).
    pub first_level: usize,
    pub top_level: usize,
    pub stabilization_level: usize,
    pub degrees: Vec<StableDegree>,
    /// Set only after an independent closed form agrees.
    pub certified: bool,
}

impl StabilizedCohomology {
    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.degrees.iter().map(|d| d.exponents.clone()).collect()
    }

    pub fn dims_mod_p(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.exponents.len()).collect()
    }

    pub fn stabilized(&self) -> bool {
        self.degrees.iter().all(|d| d.stabilized)
    }

    /// Marks the result certified when every degree matches `expected`.
    pub fn certify(&mut self, expected: &[Vec<u32>]) -> bool {
        self.certified = expected.len() == self.degrees.len()
            && self.degrees.iter().zip(expected).all(|(d, e)| {
                let mut e = e.clone();
                e.sort();
                d.exponents == e
            });
        self.certified
    }
}

/// Structure of `E(j, s)` given cocycles of `Q_j` inflated into `Q_s`.
pub fn inflation_image(top: &CayleyModel<'_>, q: usize, inflated: &[Vec<u64>]) -> Subquotient {
    let b = top.coboundaries(q);
    let mut gens = inflated.to_vec();
    gens.extend(b.iter().cloned());
    Subquotient::new(top.ring, top.dims()[q], &gens, &b)
}

/// Computes `H^i_c(G, M)` for `i ≤ max_degree ≤ 2`, where `M = (Z/p^k)^rank`
/// and `gen_action(x)` is the matrix of a group element.
pub fn continuous_cohomology(
    g: &dyn FilteredGroup,
    ring: Zpk,
    rank: usize,
    gen_action: &dyn Fn(&Elem) -> Result<ModMatrix>,
    max_degree: usize,
    opts: StableOptions,
) -> Result<StabilizedCohomology> {
    if max_degree > 2 {
        return Err(Error::Unsupported("continuous cohomology is computed up to degree 2".into()));
    }
    let p = g.p();
    let (levels, ngens) = quotient_levels(g, ring, rank, gen_action, opts.cap)?;
    // inflation is injective on H^1, so nothing has to die there
    let gap = opts.gap.unwrap_or(if max_degree >= 2 { ngens.max(1) * ring.k() as usize } else { 1 });
    check_enough_levels(g, &levels, ngens, gap, opts.cap)?;
    let models: Vec<CayleyModel<'_>> = levels.iter().map(|(_, fg, m)| CayleyModel::new(fg, m)).collect::<Result<_>>()?;
    let top = models.last().expect("at least two levels");
    let (top_level, top_group, _) = levels.last().expect("at least two levels");
    let projections: Vec<Vec<u32>> =
        levels[..levels.len() - 1].iter().map(|(_, fg, _)| top_group.projection_to(fg)).collect::<Result<_>>()?;
    let pick = levels.len() - 1 - gap;
    let mut degrees = Vec::new();
    for i in 0..=max_degree {
        let mut images = Vec::new();
        for (idx, model) in models.iter().enumerate() {
            let e = if idx + 1 == models.len() {
                top.cohomology(i)
            } else {
                let infl: Vec<Vec<u64>> =
                    model.cocycles(i).iter().map(|z| model.inflate_to(top, &projections[idx], i, z)).collect();
                inflation_image(top, i, &infl)
            };
            images.push(ImageEntry { from: levels[idx].0, to: *top_level, exponents: e.exponents() });
        }
        let exponents = images[pick].exponents.clone();
        let stabilized = pick > 0 && images[pick - 1].exponents == exponents;
        degrees.push(StableDegree { i, exponents, stabilized, images });
    }
    Ok(StabilizedCohomology {
        group: g.describe(),
        p,
        k: ring.k(),
        first_level: levels[0].0,
        top_level: *top_level,
        stabilization_level: levels[pick].0,
        degrees,
        certified: false,
    })
}

type Level = (usize, FiniteGroup, FiniteModule);

/// Quotients `Q_j` from the Frattini level up to the cap, keeping those the
/// action factors through.
fn quotient_levels(
    g: &dyn FilteredGroup,
    ring: Zpk,
    rank: usize,
    gen_action: &dyn Fn(&Elem) -> Result<ModMatrix>,
    cap: u64,
) -> Result<(Vec<Level>, usize)> {
    let p = g.p();
    let tower = QuotientTower::new(g, g.precision())?;
    let ngens = tower.index_of_level(g.min_valuation() + 1);
    let mut s_max = 0usize;
    while s_max < tower.len() && (p as u128).pow(s_max as u32 + 1) <= cap as u128 {
        s_max += 1;
    }
    let mut levels: Vec<Level> = Vec::new();
    for j in ngens.max(1)..=s_max {
        let q = tower.quotient(j, cap)?;
        let gens: Vec<ModMatrix> = q.gens.iter().map(gen_action).collect::<Result<_>>()?;
        let fg = FiniteGroup::from_quotient(&tower, &q, false);
        let m = FiniteModule { ring, rank, gen_actions: gens };
        if m.element_actions(&fg).is_ok() {
            levels.push((j, fg, m));
        } else if !levels.is_empty() {
            return Err(Error::Inconsistent(format!("action factors through level {} but not {j}", levels[0].0)));
        }
    }
    Ok((levels, ngens))
}

fn check_enough_levels(g: &dyn FilteredGroup, levels: &[Level], ngens: usize, gap: usize, cap: u64) -> Result<()> {
    if levels.len() < gap + 2 {
        return Err(Error::CapExceeded {
            what: format!("quotient levels for {} (have {}, need {})", g.describe(), levels.len(), gap + 2),
            required: (g.p() as u128).pow((levels.first().map_or(ngens, |l| l.0) + gap + 1) as u32),
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Products of degree-one classes, computed in the top quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupSpan {
    pub level: usize,
    pub top_level: usize,
    /// `dim_{F_p}` of the image of `H^1(Q_level)` in `H^1(Q_top)`.
    pub h1_dim: usize,
    /// `dim_{F_p}` of the span of all `a ∪ b` in `H^2(Q_top)`.
    pub span_dim: usize,
}

/// Span of `a ∪ b` over 1-cocycles `a, b` inflated from the reported level,
/// with trivial rank one coefficients `Z/p`.
pub fn degree_one_cup_span(g: &dyn FilteredGroup, opts: StableOptions) -> Result<CupSpan> {
    let ring = Zpk::new(g.p(), 1)?;
    let id = |_: &Elem| Ok(ModMatrix::identity(ring, 1));
    let (levels, ngens) = quotient_levels(g, ring, 1, &id, opts.cap)?;
    let gap = opts.gap.unwrap_or(ngens.max(1));
    check_enough_levels(g, &levels, ngens, gap, opts.cap)?;
    let (top_level, top_group, top_module) = levels.last().expect("enough levels");
    let top = CayleyModel::new(top_group, top_module)?;
    let pick = levels.len() - 1 - gap;
    let (level, small_group, small_module) = &levels[pick];
    let small = CayleyModel::new(small_group, small_module)?;
    let proj = top_group.projection_to(small_group)?;
    let z1: Vec<Vec<u64>> = small.cocycles(1).iter().map(|z| small.inflate_to(&top, &proj, 1, z)).collect();
    let h1_dim = inflation_image(&top, 1, &z1).dim_mod_p();
    let mut cups = Vec::new();
    for (a, x) in z1.iter().enumerate() {
        for y in &z1[a..] {
            cups.push(top.cup11(x, y));
        }
    }
    let span_dim = inflation_image(&top, 2, &cups).dim_mod_p();
    Ok(CupSpan { level: *level, top_level: *top_level, h1_dim, span_dim })
}
