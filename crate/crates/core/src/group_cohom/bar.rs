//! Normalized inhomogeneous bar cochains of a finite group.

use rayon::prelude::*;

use super::finite::{FiniteGroup, FiniteModule};
use crate::error::{Error, Result};
use crate::padic::complex::{CochainComplex, SparseMatrix};
use crate::padic::snf::ModMatrix;

/// Cochains `f: (G \ 1)^q → M` for `q ≤ max_degree + 1`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub label: String,
    pub order: usize,
    pub module_rank: usize,
    pub max_degree: usize,
    pub complex: CochainComplex,
}

impl BarComplex {
    /// Coordinate of `f(g_1..g_q)_a`; `None` if some `g_i` is the identity.
    pub fn coordinate(&self, tuple: &[usize], a: usize) -> Option<usize> {
        let n1 = self.order - 1;
        let mut idx = 0usize;
        for &g in tuple {
            if g == 0 {
                return None;
            }
            idx = idx * n1 + (g - 1);
        }
        Some(idx * self.module_rank + a)
    }

    fn tuple_of(&self, mut idx: usize, q: usize) -> Vec<usize> {
        let n1 = self.order - 1;
        let mut t = vec![0usize; q];
        for slot in t.iter_mut().rev() {
            *slot = idx % n1 + 1;
            idx /= n1;
        }
        t
    }

    pub fn is_cocycle(&self, q: usize, v: &[u64]) -> bool {
        self.complex.diffs[q].mul_vec(v).iter().all(|&x| x == 0)
    }

    /// Alexander–Whitney product for rank one trivial coefficients.
    pub fn cup(&self, q: usize, a: &[u64], r: usize, b: &[u64]) -> Result<Vec<u64>> {
        if self.module_rank != 1 {
            return Err(Error::Unsupported("cup products need rank one coefficients".into()));
        }
        if q + r > self.max_degree + 1 {
            return Err(Error::CapExceeded { what: "cup degree".into(), required: (q + r) as u128, cap: (self.max_degree + 1) as u128 });
        }
        if !self.is_cocycle(q, a) || !self.is_cocycle(r, b) {
            return Err(Error::NotCocycle(format!("cup of degrees {q} and {r}")));
        }
        let ring = self.complex.ring;
        let nb = self.complex.dims[r];
        Ok((0..self.complex.dims[q + r])
            .map(|idx| {
                let (i, j) = (idx / nb, idx % nb);
                ring.mul(a[i], b[j])
            })
            .collect())
    }

    /// Pullback along `proj: big → small` of a q-cochain on `small`.
    pub fn inflate_from(&self, small: &BarComplex, proj: &[u32], q: usize, v: &[u64]) -> Vec<u64> {
        let r = self.module_rank;
        (0..self.complex.dims[q])
            .map(|c| {
                let t: Vec<usize> = self.tuple_of(c / r, q).into_iter().map(|g| proj[g] as usize).collect();
                small.coordinate(&t, c % r).map_or(0, |i| v[i])
            })
            .collect()
    }
}

pub fn bar_complex(g: &FiniteGroup, m: &FiniteModule, max_degree: usize, cap: usize) -> Result<BarComplex> {
    if !g.has_table() {
        return Err(Error::InvalidInput("bar complex needs a multiplication table".into()));
    }
    let n1 = g.order - 1;
    let r = m.rank;
    let top = max_degree + 1;
    let need = (n1 as u128).saturating_pow(top as u32).saturating_mul(r as u128);
    if need > cap as u128 {
        return Err(Error::CapExceeded { what: format!("bar cochains in degree {top}"), required: need, cap: cap as u128 });
    }
    let rho = m.element_actions(g)?;
    let ring = m.ring;
    let dims: Vec<usize> = (0..=top).map(|q| n1.pow(q as u32) * r).collect();
    let diffs: Vec<SparseMatrix> = (0..top)
        .into_par_iter()
        .map(|q| bar_differential(g, &rho, ring, r, q, n1, dims[q + 1], dims[q]))
        .collect();
    let complex = CochainComplex::new(ring, dims, diffs)?;
    complex.check_d_squared()?;
    Ok(BarComplex { label: g.label.clone(), order: g.order, module_rank: r, max_degree, complex })
}

#[allow(clippy::too_many_arguments)]
fn bar_differential(
    g: &FiniteGroup,
    rho: &[ModMatrix],
    ring: crate::padic::Zpk,
    r: usize,
    q: usize,
    n1: usize,
    rows: usize,
    cols: usize,
) -> SparseMatrix {
    let mut d = SparseMatrix::zeros(ring, rows, cols);
    let enc = |t: &[usize]| -> Option<usize> {
        let mut idx = 0usize;
        for &x in t {
            if x == 0 {
                return None;
            }
            idx = idx * n1 + (x - 1);
        }
        Some(idx)
    };
    let mut t = vec![1usize; q + 1];
    for row_blk in 0..rows / r {
        // decode
        let mut idx = row_blk;
        for slot in t.iter_mut().rev() {
            *slot = idx % n1 + 1;
            idx /= n1;
        }
        // g_1 · f(g_2..)
        let c = enc(&t[1..]).expect("non-identity entries");
        let a = &rho[t[0]];
        for x in 0..r {
            for y in 0..r {
                let v = a.get(x, y);
                if v != 0 {
                    d.push(row_blk * r + x, c * r + y, v);
                }
            }
        }
        // (-1)^i f(.., g_i g_{i+1}, ..)
        for i in 1..=q {
            let prod = g.mul(t[i - 1], t[i]);
            if prod == 0 {
                continue;
            }
            let mut s: Vec<usize> = Vec::with_capacity(q);
            s.extend_from_slice(&t[..i - 1]);
            s.push(prod);
            s.extend_from_slice(&t[i + 1..]);
            let c = enc(&s).expect("non-identity entries");
            let v = if i % 2 == 1 { ring.neg(1) } else { 1 };
            for x in 0..r {
                d.push(row_blk * r + x, c * r + x, v);
            }
        }
        // (-1)^{q+1} f(g_1..g_q)
        let c = enc(&t[..q]).expect("non-identity entries");
        let v = if (q + 1) % 2 == 1 { ring.neg(1) } else { 1 };
        for x in 0..r {
            d.push(row_blk * r + x, c * r + x, v);
        }
    }
    d.compact();
    d
}
