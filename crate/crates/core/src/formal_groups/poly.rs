//! Truncated multivariate polynomials, by default with integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use std::ops::Neg;

use num_traits::Num;

/// `Σ c_a X^a` over monomials of total degree `<= max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C = BigInt> {
    pub nvars: usize,
    pub max_degree: u32,
    pub terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Clone + Num + Neg<Output = C>> Poly<C> {
    pub fn zero(nvars: usize, max_degree: u32) -> Self {
        Poly { nvars, max_degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, max_degree: u32, c: C) -> Self {
        let mut p = Poly::zero(nvars, max_degree);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, max_degree: u32, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars, max_degree);
        p.add_term(e, C::one());
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.nvars);
        if exps.iter().sum::<u32>() > self.max_degree || c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Lowest total degree of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, max_degree: self.max_degree, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut r = Poly::zero(self.nvars, self.max_degree);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c.clone() * s.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &o.terms {
                if da + eb.iter().sum::<u32>() > self.max_degree {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert_with(C::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, max_degree: self.max_degree, terms: acc }
    }

    /// `self(subs_0, …, subs_{n-1})`, all substitutes in a common ring of polynomials.
    pub fn compose(&self, subs: &[Self]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let target = &subs[0];
        let (nv, d) = (target.nvars, target.max_degree);
        let mut powers: Vec<Vec<Self>> = subs.iter().map(|s| vec![Poly::constant(nv, d, C::one()), s.clone()]).collect();
        let mut out = Poly::zero(nv, d);
        for (e, c) in &self.terms {
            let mut m = Poly::constant(nv, d, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                m = m.mul(&powers[i][k as usize]);
                if m.is_zero() {
                    break;
                }
            }
            out = out.add(&m);
        }
        out
    }
}
