//! Lower p-series and uniformity.

use serde::Serialize;

use crate::error::Result;
use crate::filtered::{find_ordered_basis, whole_group, Elem, FilteredGroup, Pcgs};
use crate::padic::{QStr, Q};

#[derive(Clone, Debug, Serialize)]
pub struct LowerPSeries {
    /// `(ν, dim)` layers of each `G_i`, computed modulo `G_level`.
    pub levels: Vec<Vec<(QStr, usize)>>,
    /// `[G_i : G_{i+1}] = p^{indices[i]}`.
    pub indices: Vec<usize>,
    pub quotient_level: QStr,
}

fn layers(s: &Pcgs<'_>) -> Vec<(QStr, usize)> {
    s.dims().into_iter().map(|(nu, d)| (QStr(nu), d)).collect()
}

fn next_term<'a>(g: &'a dyn FilteredGroup, gi: &Pcgs<'a>, whole: &[Elem], level: Q) -> Pcgs<'a> {
    let mut gens: Vec<Elem> = Vec::new();
    let elems = gi.elements();
    for (a, x) in elems.iter().enumerate() {
        gens.push(g.pow_p(x));
        for y in &elems[a + 1..] {
            gens.push(g.pow_p(&g.mul(x, y)));
        }
        for w in whole {
            gens.push(g.commutator(x, w));
        }
    }
    Pcgs::generated(g, level, gens, whole)
}

/// `G_1 = G`, `G_{i+1} = G_i^p [G_i, G]`, for `i <= depth`, inside `G / G_level`
/// with `level = ω_min + depth + 2`.
pub fn lower_p_series(g: &dyn FilteredGroup, depth: usize) -> Result<LowerPSeries> {
    let level = g.min_valuation() + depth as i64 + 2;
    let whole = whole_group(g, level)?;
    let wel = whole.elements();
    let mut terms = vec![whole];
    for _ in 0..depth {
        let next = next_term(g, terms.last().unwrap(), &wel, level);
        terms.push(next);
    }
    let indices = terms.windows(2).map(|w| w[0].len() - w[1].len()).collect();
    Ok(LowerPSeries { levels: terms.iter().map(layers).collect(), indices, quotient_level: QStr(level) })
}

#[derive(Clone, Debug, Serialize)]
pub struct UniformityVerdict {
    /// Minimal number of topological generators, `log_p [G : G_2]`.
    pub generators: usize,
    pub powerful: bool,
    pub indices: Vec<usize>,
    pub constant_indices: bool,
    /// Whether `G_i = {ω >= t + i - 1}` for an equi-p-valued ordered basis of
    /// valuation `t`; `None` when there is no such basis.
    pub omega_matches_series: Option<bool>,
    pub uniform: bool,
}

/// Finite generation (via the index of the Frattini quotient), powerfulness
/// (`[G,G] ⊆ G^p`, or `G^4` for p = 2) and constant lower p-series indices.
pub fn check_uniform(g: &dyn FilteredGroup, depth: usize) -> Result<UniformityVerdict> {
    let series = lower_p_series(g, depth)?;
    let level = g.min_valuation() + depth as i64 + 2;
    let whole = whole_group(g, level)?;
    let el = whole.elements();
    let p = g.p();
    let power = if p == 2 { 4 } else { p };
    let mut pgens = Vec::new();
    for (a, x) in el.iter().enumerate() {
        pgens.push(g.pow(x, power));
        for y in &el[a + 1..] {
            pgens.push(g.pow(&g.mul(x, y), power));
        }
    }
    let gp = Pcgs::generated(g, level, pgens, &el);
    let powerful = el.iter().all(|x| el.iter().all(|y| gp.contains(&g.commutator(x, y))));
    let constant = series.indices.windows(2).all(|w| w[0] == w[1]);
    let omega = match find_ordered_basis(g) {
        Ok(b) if b.equi_p_valued => {
            let t = b.valuations[0];
            let sat = series.levels.iter().enumerate().all(|(i, lv)| {
                let f = Pcgs::filtration_subgroup(g, t + i as i64, level);
                f.dims().into_iter().map(|(nu, d)| (QStr(nu), d)).collect::<Vec<_>>() == *lv
            });
            Some(sat)
        }
        _ => None,
    };
    Ok(UniformityVerdict {
        generators: series.indices.first().copied().unwrap_or(0),
        powerful,
        uniform: powerful && constant && series.indices.first().is_some_and(|&d| d > 0),
        indices: series.indices,
        constant_indices: constant,
        omega_matches_series: omega,
    })
}
