//! Finite quotients `G / N_j` of order `p^j`, where `N_j` is generated by the
//! tail of a filtration-adapted pcgs. Taking `j` through all values refines the
//! congruence tower `G / G_m` one factor of p at a time.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::filtered::{Elem, FilteredGroup, Pcgs};
use crate::padic::Q;

/// The pcgs of `G / G_level` from which quotients are cut.
pub struct QuotientTower<'a> {
    g: &'a dyn FilteredGroup,
    pc: Pcgs<'a>,
    degrees: Vec<Q>,
}

impl<'a> QuotientTower<'a> {
    pub fn new(g: &'a dyn FilteredGroup, level: Q) -> Result<Self> {
        let pc = crate::filtered::whole_group(g, level)?;
        let degrees = pc.degrees_of_elements();
        Ok(QuotientTower { g, pc, degrees })
    }

    pub fn group(&self) -> &'a dyn FilteredGroup {
        self.g
    }

    pub fn pcgs(&self) -> &Pcgs<'a> {
        &self.pc
    }

    /// Largest `j` available, `log_p |G / G_level|`.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degree of the j-th pcgs element (0-based).
    pub fn degree(&self, i: usize) -> Q {
        self.degrees[i]
    }

    /// `j` with `G / N_j = G / G_m`, i.e. the number of pcgs elements of degree `< m`.
    pub fn index_of_level(&self, m: Q) -> usize {
        self.degrees.iter().filter(|&&d| d < m).count()
    }

    pub fn key(&self, x: &[u64], j: usize) -> u64 {
        let p = self.g.p();
        self.pc.exponents(x, j).iter().rev().fold(0u64, |acc, &e| acc * p + e)
    }

    /// `G / N_j`, refusing orders above `cap`.
    pub fn quotient(&self, j: usize, cap: u64) -> Result<FiniteQuotient> {
        if j > self.len() {
            return Err(Error::InsufficientPrecision {
                what: format!("quotient of order p^{j} of {}", self.g.describe()),
                required: j as u32,
            });
        }
        let p = self.g.p();
        let order = crate::padic::modint::checked_pow(p, j as u32).filter(|&o| o <= cap).ok_or(Error::CapExceeded {
            what: "finite quotient order".into(),
            required: (p as u128).saturating_pow(j as u32),
            cap: cap as u128,
        })?;
        let g = self.g;
        let nu0 = g.min_valuation();
        let elems = self.pc.elements();
        let gens: Vec<Elem> = elems.iter().take(j).zip(&self.degrees).filter(|(_, &d)| d < nu0 + 1).map(|(x, _)| x.clone()).collect();
        let mut reps: Vec<Elem> = vec![g.identity()];
        let mut keys: Vec<u64> = vec![0];
        let mut index: HashMap<u64, u32> = HashMap::from([(0, 0)]);
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for s in &gens {
                let y = g.reduce_level(&g.mul(&reps[a], s), self.pc.level());
                let k = self.key(&y, j);
                let b = *index.entry(k).or_insert_with(|| {
                    reps.push(y);
                    keys.push(k);
                    queue.push_back(reps.len() - 1);
                    (reps.len() - 1) as u32
                });
                row.push(b);
            }
            if right.len() <= a {
                right.resize(a + 1, Vec::new());
            }
            right[a] = row;
        }
        if reps.len() as u64 != order {
            return Err(Error::Inconsistent(format!(
                "generators reach {} elements of a quotient of order {order}",
                reps.len()
            )));
        }
        Ok(FiniteQuotient { p, j, order: reps.len(), reps, keys, index, gens, right, table: None })
    }
}

/// An explicit finite p-group with right multiplication by generators.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    pub p: u64,
    /// The order is `p^j`.
    pub j: usize,
    pub order: usize,
    /// A lift of each element to the truncated group.
    pub reps: Vec<Elem>,
    /// Exponent vectors packed base p.
    pub keys: Vec<u64>,
    index: HashMap<u64, u32>,
    /// Lifts of the generators.
    pub gens: Vec<Elem>,
    /// `right[a][s]` = index of `a · gens[s]`.
    pub right: Vec<Vec<u32>>,
    table: Option<Vec<u32>>,
}

impl FiniteQuotient {
    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of_key(&self, key: u64) -> Option<usize> {
        self.index.get(&key).map(|&i| i as usize)
    }

    /// Index of `x` (an element of the truncated group).
    pub fn index_of(&self, tower: &QuotientTower<'_>, x: &[u64]) -> usize {
        self.index_of_key(tower.key(x, self.j)).expect("element of the group")
    }

    /// Builds the full multiplication table.
    pub fn with_table(mut self, tower: &QuotientTower<'_>) -> Self {
        let g = tower.group();
        let n = self.order;
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let y = g.mul(&self.reps[a], &self.reps[b]);
                t[a * n + b] = self.index_of(tower, &y) as u32;
            }
        }
        self.table = Some(t);
        self
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// `a · b`; needs `with_table`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.as_ref().expect("multiplication table")[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.mul(a, b) == 0).expect("inverse")
    }

    /// Image under `G / N_j → G / N_small` for `small <= j`.
    pub fn project_key(&self, a: usize, small: usize) -> u64 {
        self.keys[a] % self.p.pow(small as u32)
    }

    /// Largest element order; needs `with_table`.
    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for a in 0..self.order {
            let mut x = a;
            let mut k = 1u64;
            while x != 0 {
                x = self.mul(x, a);
                k += 1;
            }
            e = e.max(k);
        }
        e
    }
}
