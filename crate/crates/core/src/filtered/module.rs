//! Filtered-free modules `⊕ A e_i` with `w(Σ λ_i e_i) = min v(λ_i) + w(e_i)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleSide {
    Group,
    Lie,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredFreeModule {
    pub e: u32,
    pub valuations: Vec<Q>,
    pub side: ModuleSide,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Saturated {
    pub module: FilteredFreeModule,
    /// `e·w(e_i)`: the new generators are `π^{-e w(e_i)} e_i`.
    pub exponents: Vec<u32>,
}

impl Saturated {
    /// Undoes the rescaling.
    pub fn original(&self) -> FilteredFreeModule {
        let e = self.module.e;
        FilteredFreeModule {
            e,
            valuations: self.exponents.iter().map(|&x| Q::new(x as i64, e as i64)).collect(),
            side: self.module.side,
        }
    }
}

impl FilteredFreeModule {
    pub fn new(e: u32, valuations: Vec<Q>, side: ModuleSide) -> Result<Self> {
        for w in &valuations {
            if *w < qi(0) || !(*w * e as i64).is_integer() {
                return Err(Error::InvalidInput(format!("generator valuation {w} is not in (1/{e})Z>=0")));
            }
        }
        Ok(FilteredFreeModule { e, valuations, side })
    }

    pub fn rank(&self) -> usize {
        self.valuations.len()
    }

    /// `w(Σ λ_i e_i)` from the valuations `v(λ_i)` (`None` = zero coefficient).
    pub fn value(&self, coeff_vals: &[Option<Q>]) -> Option<Q> {
        coeff_vals.iter().zip(&self.valuations).filter_map(|(c, w)| c.map(|v| v + w)).min()
    }

    /// `dim gr_ν` for `ν = 0, 1/e, …, up_to`.
    pub fn graded_dims(&self, up_to: Q) -> Vec<(Q, usize)> {
        let step = Q::new(1, self.e as i64);
        let mut out = Vec::new();
        let mut nu = qi(0);
        while nu <= up_to {
            out.push((nu, self.valuations.iter().filter(|&&w| w <= nu).count()));
            nu += step;
        }
        out
    }

    /// `(gr M ⊗ F_p[ε^{±1}])_{≥0}` where ε has degree `1/e`: every generator
    /// contributes one dimension in each degree `w_i + n/e >= 0`, `n ∈ Z`.
    pub fn laurent_dims(&self, up_to: Q) -> Vec<(Q, usize)> {
        let step = Q::new(1, self.e as i64);
        let mut out = Vec::new();
        let mut nu = qi(0);
        while nu <= up_to {
            let count = self.valuations.iter().filter(|&&w| ((nu - w) / step).is_integer()).count();
            out.push((nu, count));
            nu += step;
        }
        out
    }
}

/// Rescales every generator to valuation 0.
pub fn saturate_filtered_free(m: &FilteredFreeModule) -> Saturated {
    let exponents = m.valuations.iter().map(|w| (*w * m.e as i64).to_integer() as u32).collect();
    Saturated {
        module: FilteredFreeModule { e: m.e, valuations: vec![qi(0); m.rank()], side: m.side },
        exponents,
    }
}

/// `w(z^α) = Σ α_i ω(x_i)`.
pub fn groupring_valuation(alpha: &[u64], valuations: &[Q]) -> Q {
    assert_eq!(alpha.len(), valuations.len());
    alpha.iter().zip(valuations).map(|(&a, &w)| w * a as i64).sum()
}
