//! Subgroups of a truncated filtered group `G / G_level`, stored as a
//! polycyclic generating sequence adapted to the filtration: in every degree ν
//! the leading vectors of the elements of degree ν are in echelon form.

use std::collections::{BTreeMap, VecDeque};

use super::{Elem, FilteredGroup};
use crate::padic::modint::Zpk;
use crate::padic::{Val, Q};

#[derive(Clone, Debug)]
struct Row {
    lead: Vec<u64>,
    pivot: usize,
    elem: Elem,
}

/// A subgroup of `G / G_level`.
pub struct Pcgs<'a> {
    g: &'a dyn FilteredGroup,
    level: Q,
    fp: Zpk,
    layers: BTreeMap<Q, Vec<Row>>,
}

impl<'a> Pcgs<'a> {
    pub fn new(g: &'a dyn FilteredGroup, level: Q) -> Self {
        let fp = Zpk::new(g.p(), 1).expect("group prime");
        Pcgs { g, level, fp, layers: BTreeMap::new() }
    }

    /// The subgroup generated by `gens`, closed under commutators with `normal`.
    pub fn generated(g: &'a dyn FilteredGroup, level: Q, gens: Vec<Elem>, normal: &[Elem]) -> Self {
        let mut s = Pcgs::new(g, level);
        s.close(gens, normal);
        s
    }

    /// `{x : ω(x) >= from}` modulo `G_level`.
    pub fn filtration_subgroup(g: &'a dyn FilteredGroup, from: Q, level: Q) -> Self {
        let gens: Vec<Elem> =
            g.degrees(from.max(g.min_valuation()), level).into_iter().flat_map(|nu| g.degree_generators(nu)).collect();
        Pcgs::generated(g, level, gens, &[])
    }

    pub fn level(&self) -> Q {
        self.level
    }

    pub fn group(&self) -> &'a dyn FilteredGroup {
        self.g
    }

    /// `log_p` of the order.
    pub fn len(&self) -> usize {
        self.layers.values().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(ν, dim)` for every degree present.
    pub fn dims(&self) -> Vec<(Q, usize)> {
        self.layers.iter().filter(|(_, l)| !l.is_empty()).map(|(&nu, l)| (nu, l.len())).collect()
    }

    pub fn dim_at(&self, nu: Q) -> usize {
        self.layers.get(&nu).map_or(0, |l| l.len())
    }

    pub fn layer(&self, nu: Q) -> Vec<Elem> {
        self.layers.get(&nu).map_or_else(Vec::new, |l| l.iter().map(|r| r.elem.clone()).collect())
    }

    /// All elements, by degree.
    pub fn elements(&self) -> Vec<Elem> {
        self.layers.values().flat_map(|l| l.iter().map(|r| r.elem.clone())).collect()
    }

    pub fn degrees_of_elements(&self) -> Vec<Q> {
        self.layers.iter().flat_map(|(&nu, l)| std::iter::repeat_n(nu, l.len())).collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.sift(x).is_none()
    }

    /// Coordinates of a leading vector at ν in the echelon basis of that layer.
    pub fn layer_coordinates(&self, nu: Q, lead: &[u64]) -> Option<Vec<u64>> {
        let fp = self.fp;
        let mut v = lead.to_vec();
        let rows = self.layers.get(&nu).map_or(&[][..], |l| &l[..]);
        let mut coeffs = Vec::with_capacity(rows.len());
        for row in rows {
            let t = v[row.pivot];
            coeffs.push(t);
            if t != 0 {
                for (a, &b) in v.iter_mut().zip(&row.lead) {
                    *a = fp.sub(*a, fp.mul(t, b));
                }
            }
        }
        v.iter().all(|&c| c == 0).then_some(coeffs)
    }

    /// Reduces `x` by the subgroup; `None` if `x` lies in it, otherwise the degree,
    /// the reduced element and its leading vector.
    fn sift(&self, x: &[u64]) -> Option<(Q, Elem, Vec<u64>)> {
        let g = self.g;
        let fp = self.fp;
        let p = g.p();
        let mut x = g.reduce_level(x, self.level);
        loop {
            let nu = match g.omega(&x) {
                Val::Exact(nu) if nu < self.level => nu,
                _ => return None,
            };
            let mut lead = g.leading(&x, nu);
            if let Some(rows) = self.layers.get(&nu) {
                for row in rows {
                    let t = lead[row.pivot];
                    if t != 0 {
                        let h = g.pow(&row.elem, p - t);
                        x = g.mul(&x, &h);
                        for (a, &b) in lead.iter_mut().zip(&row.lead) {
                            *a = fp.sub(*a, fp.mul(t, b));
                        }
                    }
                }
                x = g.reduce_level(&x, self.level);
            }
            if lead.iter().any(|&c| c != 0) {
                return Some((nu, x, lead));
            }
        }
    }

    fn insert(&mut self, nu: Q, x: Elem, lead: Vec<u64>) -> Elem {
        let fp = self.fp;
        let pivot = lead.iter().position(|&c| c != 0).expect("nonzero leading vector");
        let c = fp.inv(lead[pivot]).expect("unit pivot");
        let elem = self.g.reduce_level(&self.g.pow(&x, c), self.level);
        let lead: Vec<u64> = lead.iter().map(|&a| fp.mul(a, c)).collect();
        let p = self.g.p();
        let rows = self.layers.entry(nu).or_default();
        // keep the layer in reduced echelon form so that exponents can be read
        // off pivot positions independently of each other
        for row in rows.iter_mut() {
            let t = row.lead[pivot];
            if t != 0 {
                row.elem = self.g.reduce_level(&self.g.mul(&row.elem, &self.g.pow(&elem, p - t)), self.level);
                for (a, &b) in row.lead.iter_mut().zip(&lead) {
                    *a = fp.sub(*a, fp.mul(t, b));
                }
            }
        }
        rows.push(Row { lead, pivot, elem: elem.clone() });
        elem
    }

    /// Exponents `e_i` of `x` on the first `count` elements (in the order of
    /// `elements()`), for `x` in the subgroup. They determine the coset of `x`
    /// modulo the subgroup generated by the remaining elements, which is normal
    /// whenever it contains a whole filtration step.
    pub fn exponents(&self, x: &[u64], count: usize) -> Vec<u64> {
        let g = self.g;
        let p = g.p();
        let fp = self.fp;
        let mut out = Vec::with_capacity(count);
        let mut x = g.reduce_level(x, self.level);
        for (&nu, rows) in &self.layers {
            if out.len() >= count {
                break;
            }
            let mut lead = g.leading(&x, nu);
            for row in rows {
                let t = lead[row.pivot];
                if out.len() < count {
                    out.push(t);
                }
                if t != 0 {
                    x = g.mul(&x, &g.pow(&row.elem, p - t));
                    for (a, &b) in lead.iter_mut().zip(&row.lead) {
                        *a = fp.sub(*a, fp.mul(t, b));
                    }
                }
            }
            debug_assert!(lead.iter().all(|&c| c == 0), "element outside the subgroup");
            x = g.reduce_level(&x, self.level);
        }
        out.resize(count, 0);
        out
    }

    /// Adds `gens` and closes under p-th powers, mutual commutators and
    /// commutators with `normal`.
    pub fn close(&mut self, gens: Vec<Elem>, normal: &[Elem]) {
        let g = self.g;
        let mut queue: VecDeque<Elem> = gens.into();
        while let Some(y) = queue.pop_front() {
            let Some((nu, x, lead)) = self.sift(&y) else { continue };
            let h = self.insert(nu, x, lead);
            queue.push_back(g.pow_p(&h));
            for other in self.elements() {
                queue.push_back(g.commutator(&h, &other));
            }
            for n in normal {
                queue.push_back(g.commutator(&h, n));
            }
        }
    }
}
