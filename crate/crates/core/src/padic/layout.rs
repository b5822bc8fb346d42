//! Coordinates over Z_p with per-coordinate valuation offsets.

use super::modint::Zpk;
use super::{qi, Val, Q};

/// `x = Σ c_i b_i` with `c_i ∈ Z/p^M` and `v(b_i) = off_i ∈ [0,1)`, so that
/// `v(x) = min v_p(c_i) + off_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    zpk: Zpk,
    offsets: Vec<Q>,
}

impl Layout {
    pub fn new(zpk: Zpk, offsets: Vec<Q>) -> Self {
        Layout { zpk, offsets }
    }

    pub fn zpk(&self) -> Zpk {
        self.zpk
    }

    pub fn p(&self) -> u64 {
        self.zpk.p()
    }

    pub fn digits(&self) -> u32 {
        self.zpk.k()
    }

    pub fn dim(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[Q] {
        &self.offsets
    }

    pub fn with_zpk(&self, zpk: Zpk) -> Layout {
        Layout { zpk, offsets: self.offsets.clone() }
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn val(&self, x: &[u64]) -> Val {
        let mut best: Option<Q> = None;
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let v = qi(self.zpk.val(c) as i64) + self.offsets[i];
                best = Some(best.map_or(v, |b: Q| b.min(v)));
            }
        }
        match best {
            Some(v) => Val::Exact(v),
            None => Val::AtLeast(self.precision_bound()),
        }
    }

    /// Valuation of the bottom element.
    pub fn precision_bound(&self) -> Q {
        qi(self.digits() as i64)
    }

    /// Number of p-adic digits coordinate `i` keeps below `level`.
    pub fn digits_below(&self, i: usize, level: Q) -> u32 {
        (level - self.offsets[i]).ceil().to_integer().clamp(0, self.digits() as i64) as u32
    }

    /// Zeroes everything of valuation `>= level`.
    pub fn reduce_level(&self, x: &[u64], level: Q) -> Vec<u64> {
        x.iter()
            .enumerate()
            .map(|(i, &c)| {
                let k = self.digits_below(i, level);
                if k >= self.digits() {
                    c
                } else {
                    c % self.zpk.p_pow(k)
                }
            })
            .collect()
    }

    /// The p-adic digit of `c_i` at position `j`.
    pub fn digit(&self, x: &[u64], i: usize, j: u32) -> u64 {
        if j >= self.digits() {
            return 0;
        }
        (x[i] / self.zpk.p_pow(j)) % self.p()
    }

    /// Coordinates able to carry valuation exactly `nu`.
    pub fn slots_at(&self, nu: Q) -> Vec<(usize, u32)> {
        (0..self.dim())
            .filter_map(|i| {
                let j = nu - self.offsets[i];
                (j.is_integer() && j >= qi(0)).then(|| (i, j.to_integer() as u32))
            })
            .collect()
    }

    /// Digits of `x` sitting exactly at valuation `nu`, one per slot of `slots_at`.
    pub fn leading(&self, x: &[u64], nu: Q) -> Vec<u64> {
        self.slots_at(nu).into_iter().map(|(i, j)| self.digit(x, i, j)).collect()
    }
}
