//! Chevalley–Eilenberg cohomology of Lie lattices with `Z/p^k` coefficients.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lazard_lie::{LieLattice, LieModule};
use crate::padic::complex::{CochainComplex, DegreeCohomology, SparseMatrix};
use crate::padic::Zpk;

/// `Hom(Λ^q L, M)` for `q = 0..d` with the standard differential.
///
/// A cochain in degree q is indexed by `(I, a)` with `I` an increasing
/// multi-index (stored as a bitmask) and `a` a coordinate of `M`.
#[derive(Clone, Debug)]
pub struct CEComplex {
    pub lattice: LieLattice,
    pub module_rank: usize,
    pub complex: CochainComplex,
    masks: Vec<Vec<u32>>,
    index: HashMap<u32, usize>,
    trivial_action: bool,
}

/// Bitmasks of q-element subsets of `0..d` in increasing order.
pub fn masks_of_size(d: usize, q: usize) -> Vec<u32> {
    (0u32..1 << d).filter(|m| m.count_ones() as usize == q).collect()
}

/// `(-1)^{#{t in T : t < k}}`.
pub fn insertion_sign(t: u32, k: usize) -> bool {
    (t & ((1u32 << k) - 1)).count_ones() % 2 == 1
}

pub fn ce_complex_trivial(l: &LieLattice, ring: Zpk) -> Result<CEComplex> {
    ce_complex(l, &LieModule::trivial(l.d, 1, ring))
}

pub fn ce_complex(l: &LieLattice, m: &LieModule) -> Result<CEComplex> {
    let d = l.d;
    if d > 20 {
        return Err(Error::CapExceeded { what: "Lie lattice rank".into(), required: d as u128, cap: 20 });
    }
    if m.actions.len() != d {
        return Err(Error::InvalidInput("module and lattice ranks differ".into()));
    }
    let ring = m.ring;
    let r = m.rank;
    let c = l.reduce(ring)?;
    let masks: Vec<Vec<u32>> = (0..=d).map(|q| masks_of_size(d, q)).collect();
    let mut index = HashMap::new();
    for level in &masks {
        for (i, &s) in level.iter().enumerate() {
            index.insert(s, i);
        }
    }
    let dims: Vec<usize> = masks.iter().map(|v| v.len() * r).collect();
    let diffs: Vec<SparseMatrix> = (0..d)
        .into_par_iter()
        .map(|q| {
            let mut dm = SparseMatrix::zeros(ring, dims[q + 1], dims[q]);
            for (row_blk, &s) in masks[q + 1].iter().enumerate() {
                let elems: Vec<usize> = (0..d).filter(|&b| s >> b & 1 == 1).collect();
                // action terms
                for (i, &si) in elems.iter().enumerate() {
                    let rest = s & !(1 << si);
                    let col_blk = index[&rest];
                    let a = &m.actions[si];
                    for x in 0..r {
                        for y in 0..r {
                            let v = a.get(x, y);
                            if v != 0 {
                                let v = if i % 2 == 1 { ring.neg(v) } else { v };
                                dm.push(row_blk * r + x, col_blk * r + y, v);
                            }
                        }
                    }
                }
                // bracket terms
                for (i, &si) in elems.iter().enumerate() {
                    for (j, &sj) in elems.iter().enumerate().skip(i + 1) {
                        let rest = s & !(1 << si) & !(1 << sj);
                        for k in 0..d {
                            let ck = c[(si * d + sj) * d + k];
                            if ck == 0 || rest >> k & 1 == 1 {
                                continue;
                            }
                            let neg = ((i + j) % 2 == 1) ^ insertion_sign(rest, k);
                            let v = if neg { ring.neg(ck) } else { ck };
                            let col_blk = index[&(rest | 1 << k)];
                            for x in 0..r {
                                dm.push(row_blk * r + x, col_blk * r + x, v);
                            }
                        }
                    }
                }
            }
            dm.compact();
            dm
        })
        .collect();
    let complex = CochainComplex::new(ring, dims, diffs)?;
    complex.check_d_squared()?;
    Ok(CEComplex { lattice: l.clone(), module_rank: r, complex, masks, index, trivial_action: m.is_trivial() })
}

impl CEComplex {
    pub fn ring(&self) -> Zpk {
        self.complex.ring
    }

    pub fn top(&self) -> usize {
        self.lattice.d
    }

    /// Multi-indices of degree q in the order used for coordinates.
    pub fn basis(&self, q: usize) -> &[u32] {
        &self.masks[q]
    }

    /// Coordinate of the basis cochain `f_I ⊗ m_a`.
    pub fn coordinate(&self, mask: u32, a: usize) -> usize {
        self.index[&mask] * self.module_rank + a
    }

    pub fn is_cocycle(&self, q: usize, v: &[u64]) -> bool {
        q == self.top() || self.complex.diffs[q].mul_vec(v).iter().all(|&x| x == 0)
    }

    pub fn differential(&self, q: usize, v: &[u64]) -> Vec<u64> {
        self.complex.diffs[q].mul_vec(v)
    }

    /// Wedge product of cochains with rank one trivial coefficients.
    pub fn cup(&self, q: usize, a: &[u64], r: usize, b: &[u64]) -> Result<Vec<u64>> {
        if self.module_rank != 1 || !self.trivial_action {
            return Err(Error::Unsupported("wedge product needs rank one trivial coefficients".into()));
        }
        if q + r > self.top() {
            return Ok(Vec::new());
        }
        if !self.is_cocycle(q, a) || !self.is_cocycle(r, b) {
            return Err(Error::NotCocycle(format!("cup of degrees {q} and {r}")));
        }
        Ok(self.wedge(q, a, r, b))
    }

    /// Wedge product without cocycle checks.
    pub fn wedge(&self, q: usize, a: &[u64], r: usize, b: &[u64]) -> Vec<u64> {
        let ring = self.ring();
        let mut out = vec![0u64; self.masks.get(q + r).map_or(0, |v| v.len())];
        for (i, &s) in self.masks[q].iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            for (j, &t) in self.masks[r].iter().enumerate() {
                if b[j] == 0 || s & t != 0 {
                    continue;
                }
                // inversions: pairs s_x > t_y
                let inv: u32 = (0..self.lattice.d).filter(|&y| t >> y & 1 == 1).map(|y| (s >> y).count_ones() - (s >> y & 1)).sum();
                let v = ring.mul(a[i], b[j]);
                let idx = self.index[&(s | t)];
                out[idx] = if inv % 2 == 1 { ring.sub(out[idx], v) } else { ring.add(out[idx], v) };
            }
        }
        out
    }

    pub fn cohomology(&self) -> Vec<DegreeCohomology> {
        (0..=self.top()).into_par_iter().map(|q| self.complex.cohomology(q)).collect()
    }
}

/// Cohomology in one degree as a sum of cyclic modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub i: usize,
    /// `a` for each summand `Z/p^a`, non-decreasing.
    pub exponents: Vec<u32>,
    pub divisors: Vec<String>,
    /// Number of `Z/p^k` summands.
    pub free_rank: usize,
    pub dim_mod_p: usize,
}

impl DegreeReport {
    pub fn new(i: usize, p: u64, k: u32, exponents: Vec<u32>) -> Self {
        let divisors = exponents.iter().map(|&a| format!("{p}^{a}")).collect();
        let free_rank = exponents.iter().filter(|&&a| a == k).count();
        DegreeReport { i, dim_mod_p: exponents.len(), free_rank, divisors, exponents }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomReport {
    pub side: String,
    pub p: u64,
    pub k: u32,
    pub coefficients: String,
    pub source: String,
    pub degrees: Vec<DegreeReport>,
}

impl CohomReport {
    pub fn dims_mod_p(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim_mod_p).collect()
    }
}

pub fn cohomology(c: &CEComplex, coefficients: &str) -> CohomReport {
    let ring = c.ring();
    let degrees = c
        .cohomology()
        .into_iter()
        .map(|h| DegreeReport::new(h.degree, ring.p(), ring.k(), h.exponents()))
        .collect();
    CohomReport {
        side: "lie".into(),
        p: ring.p(),
        k: ring.k(),
        coefficients: coefficients.into(),
        source: c.lattice.provenance.clone(),
        degrees,
    }
}

/// Mod-p Betti numbers by ranks of the reduced differentials, independent of
/// the subquotient code path.
pub fn betti_mod_p(l: &LieLattice, m: &LieModule) -> Result<Vec<usize>> {
    let ring = Zpk::new(m.ring.p(), 1)?;
    let reduced = LieModule {
        ring,
        rank: m.rank,
        actions: m.actions.iter().map(|a| a.reduce(ring)).collect(),
    };
    let c = ce_complex(l, &reduced)?;
    Ok((0..=l.d).map(|q| c.complex.betti_mod_p_by_rank(q).expect("defined over F_p")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lazard_lie::lattice;

    fn f3() -> Zpk {
        Zpk::new(3, 1).unwrap()
    }

    #[test]
    fn abelian_is_exterior() {
        let c = ce_complex_trivial(&lattice::abelian(4), f3()).unwrap();
        assert!(c.complex.diffs.iter().all(|d| d.is_zero()));
        assert_eq!(cohomology(&c, "trivial").dims_mod_p(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn heisenberg_mod_three() {
        let c = ce_complex_trivial(&lattice::heisenberg(3), f3()).unwrap();
        assert!(c.complex.diffs.iter().all(|d| d.is_zero()));
        assert_eq!(cohomology(&c, "trivial").dims_mod_p(), vec![1, 3, 3, 1]);
        let c = ce_complex_trivial(&lattice::heisenberg(3), Zpk::new(3, 2).unwrap()).unwrap();
        let r = cohomology(&c, "trivial");
        assert_eq!(r.degrees[1].exponents, vec![1, 2, 2]);
    }

    #[test]
    fn quaternion_betti_numbers() {
        let c = ce_complex_trivial(&lattice::quaternion(5, 2), Zpk::new(5, 1).unwrap()).unwrap();
        assert!(!c.complex.diffs[1].is_zero());
        assert_eq!(cohomology(&c, "trivial").dims_mod_p(), vec![1, 3, 4, 3, 1]);
    }

    #[test]
    fn volume_form_from_degree_one() {
        let c = ce_complex_trivial(&lattice::abelian(3), f3()).unwrap();
        let e = |i: usize| {
            let mut v = vec![0u64; 3];
            v[c.coordinate(1 << i, 0)] = 1;
            v
        };
        let ab = c.cup(1, &e(0), 1, &e(1)).unwrap();
        let abc = c.cup(2, &ab, 1, &e(2)).unwrap();
        assert_eq!(abc, vec![1]);
        let ba = c.cup(1, &e(1), 1, &e(0)).unwrap();
        assert_eq!(ba, ab.iter().map(|&x| (3 - x) % 3).collect::<Vec<_>>());
        assert!(c.cup(1, &e(0), 1, &e(0)).unwrap().iter().all(|&x| x == 0));
    }
}
