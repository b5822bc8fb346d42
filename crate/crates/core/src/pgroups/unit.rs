//! Congruence subgroups `1 + X` of the unit group of a Z_p-algebra.

use std::sync::Arc;

use rand::RngCore;

use crate::filtered::{Elem, FilteredGroup};
use crate::padic::series;
use crate::padic::{Algebra, Layout, Val, Q};
use crate::Result;

/// `{1 + X : X in span(coords), ω(X) >= level}`, stored as `X`.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    alg: Arc<Algebra>,
    /// Valuation used for ω; usually the algebra's own.
    layout: Layout,
    e: u32,
    coords: Vec<usize>,
    mask: Vec<bool>,
    level: Q,
    label: String,
}

impl UnitGroup {
    /// `coords` lists the allowed coordinates in the order used for bases.
    pub fn new(alg: Arc<Algebra>, layout: Layout, e: u32, coords: Vec<usize>, level: Q, label: String) -> Self {
        let mut mask = vec![false; alg.dim()];
        for &c in &coords {
            mask[c] = true;
        }
        UnitGroup { alg, layout, e, coords, mask, level, label }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn level(&self) -> Q {
        self.level
    }

    /// `1 + X` as algebra coordinates.
    pub fn to_algebra(&self, x: &[u64]) -> Vec<u64> {
        self.alg.add(&self.alg.one(), x)
    }

    /// Element from an algebra element `A = 1 + X`.
    pub fn from_algebra(&self, a: &[u64]) -> Elem {
        self.alg.sub(a, &self.alg.one())
    }

    fn slots(&self, nu: Q) -> Vec<(usize, u32)> {
        if nu < self.level {
            return Vec::new();
        }
        let all = self.layout.slots_at(nu);
        self.coords.iter().filter_map(|&c| all.iter().find(|s| s.0 == c).copied()).collect()
    }
}

impl FilteredGroup for UnitGroup {
    fn describe(&self) -> String {
        self.label.clone()
    }

    fn p(&self) -> u64 {
        self.alg.p()
    }

    fn ramification(&self) -> u32 {
        self.e
    }

    fn omega(&self, x: &[u64]) -> Val {
        self.layout.val(x)
    }

    fn min_valuation(&self) -> Q {
        self.level
    }

    fn precision(&self) -> Q {
        self.layout.precision_bound()
    }

    fn reduce_level(&self, x: &[u64], level: Q) -> Elem {
        self.layout.reduce_level(x, level)
    }

    fn leading(&self, x: &[u64], nu: Q) -> Vec<u64> {
        self.slots(nu).into_iter().map(|(i, j)| self.layout.digit(x, i, j)).collect()
    }

    fn degree_generators(&self, nu: Q) -> Vec<Elem> {
        let z = self.layout.zpk();
        self.slots(nu)
            .into_iter()
            .map(|(i, j)| {
                let mut x = self.alg.zero();
                x[i] = z.p_pow(j);
                x
            })
            .collect()
    }

    fn identity(&self) -> Elem {
        self.alg.zero()
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Elem {
        let xy = self.alg.mul(x, y);
        self.alg.add(&self.alg.add(x, y), &xy)
    }

    fn inv(&self, x: &[u64]) -> Elem {
        // (1+X)^{-1} = Σ (-X)^m, finite because X is topologically nilpotent
        let a = &self.alg;
        let minus = a.neg(x);
        let mut term = minus.clone();
        let mut acc = a.zero();
        while !a.is_zero(&term) {
            acc = a.add(&acc, &term);
            term = a.mul(&term, &minus);
        }
        acc
    }

    fn contains(&self, x: &[u64]) -> bool {
        x.iter().enumerate().all(|(i, &c)| c == 0 || self.mask[i]) && self.layout.val(x).ge(self.level) == Some(true)
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Elem {
        let z = self.layout.zpk();
        let extra = if rng.next_u32().is_multiple_of(3) { 1 } else { 0 };
        let mut x = self.alg.zero();
        for &c in &self.coords {
            let j = self.layout.digits_below(c, self.level) + extra;
            let r = z.reduce_u64(rng.next_u64());
            x[c] = z.mul(r, z.p_pow(j));
        }
        x
    }

    fn pth_root(&self, x: &[u64]) -> Result<Option<Elem>> {
        match series::pth_root(&self.alg, x)? {
            Some(y) if self.contains(&y) => Ok(Some(y)),
            _ => Ok(None),
        }
    }
}
