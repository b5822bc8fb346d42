//! Finite cochain complexes of free Z/p^k-modules and their cohomology.

use super::kernel::{KernelBuilder, Subquotient};
use super::modint::Zpk;
use super::snf::{snf_mod, ModMatrix};
use crate::error::{Error, Result};

/// Row-major sparse matrix over Z/p^k; entries within a row are unsorted and
/// may repeat (repeats add).
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pub ring: Zpk,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, u64)>>,
}

impl SparseMatrix {
    pub fn zeros(ring: Zpk, rows: usize, cols: usize) -> Self {
        SparseMatrix { ring, rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn push(&mut self, row: usize, col: usize, v: u64) {
        if v != 0 {
            self.entries[row].push((col, v));
        }
    }

    /// Merges repeated columns and drops zeros.
    pub fn compact(&mut self) {
        let r = self.ring;
        for row in self.entries.iter_mut() {
            row.sort_unstable_by_key(|e| e.0);
            let mut out: Vec<(usize, u64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 = r.add(last.1, v),
                    _ => out.push((c, v)),
                }
            }
            out.retain(|e| e.1 != 0);
            *row = out;
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(|r| r.len()).sum()
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        self.entries
            .iter()
            .map(|row| row.iter().fold(0u64, |acc, &(c, v)| self.ring.mul_add(acc, v, x[c])))
            .collect()
    }

    /// Column `j` as a dense vector.
    pub fn columns(&self) -> Vec<Vec<u64>> {
        let mut cols = vec![vec![0u64; self.rows]; self.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for &(c, v) in row {
                cols[c][i] = self.ring.add(cols[c][i], v);
            }
        }
        cols
    }

    pub fn to_dense(&self) -> ModMatrix {
        let mut m = ModMatrix::zeros(self.ring, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for &(c, v) in row {
                let cur = m.get(i, c);
                m.set(i, c, self.ring.add(cur, v));
            }
        }
        m
    }

    /// `self · other`, used for `d∘d` checks.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let r = self.ring;
        let mut out = SparseMatrix::zeros(r, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for &(t, a) in row {
                for &(j, b) in &other.entries[t] {
                    if acc[j] == 0 {
                        touched.push(j);
                    }
                    acc[j] = r.mul_add(acc[j], a, b);
                }
            }
            for &j in &touched {
                if acc[j] != 0 {
                    out.entries[i].push((j, acc[j]));
                }
                acc[j] = 0;
            }
            touched.clear();
        }
        out.compact();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|e| e.1 == 0))
    }
}

/// Cohomology in one degree.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub quotient: Subquotient,
}

impl DegreeCohomology {
    pub fn exponents(&self) -> Vec<u32> {
        self.quotient.exponents()
    }
}

/// `C^0 → C^1 → … → C^top`, `diffs[q]: C^q → C^{q+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub ring: Zpk,
    pub dims: Vec<usize>,
    pub diffs: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn new(ring: Zpk, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len() {
            return Err(Error::InvalidInput("need one differential per adjacent pair".into()));
        }
        for (q, d) in diffs.iter().enumerate() {
            if d.cols != dims[q] || d.rows != dims[q + 1] {
                return Err(Error::InvalidInput(format!("differential {q} has the wrong shape")));
            }
        }
        Ok(CochainComplex { ring, dims, diffs })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// First failing `(degree, row, col)` of `d_{q+1} ∘ d_q`, if any.
    pub fn check_d_squared(&self) -> Result<()> {
        for q in 0..self.diffs.len().saturating_sub(1) {
            let dd = self.diffs[q + 1].compose(&self.diffs[q]);
            for (i, row) in dd.entries.iter().enumerate() {
                if let Some(&(j, _)) = row.first() {
                    return Err(Error::NonzeroSquare { degree: q, row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Generators of the cocycles in degree `q`.
    pub fn cocycles(&self, q: usize) -> Vec<Vec<u64>> {
        let mut kb = KernelBuilder::new(self.ring, self.dims[q]);
        if q < self.diffs.len() {
            for row in &self.diffs[q].entries {
                kb.add_row(row);
            }
        }
        kb.generators()
    }

    pub fn coboundaries(&self, q: usize) -> Vec<Vec<u64>> {
        if q == 0 {
            Vec::new()
        } else {
            self.diffs[q - 1].columns()
        }
    }

    pub fn cohomology(&self, q: usize) -> DegreeCohomology {
        let z = self.cocycles(q);
        let b = self.coboundaries(q);
        DegreeCohomology { degree: q, quotient: Subquotient::new(self.ring, self.dims[q], &z, &b) }
    }

    pub fn all_cohomology(&self) -> Vec<DegreeCohomology> {
        (0..=self.top()).map(|q| self.cohomology(q)).collect()
    }

    /// Independent mod-p Betti number: `dim C^q - rank d_q - rank d_{q-1}` over F_p,
    /// valid only when the complex is defined over Z/p.
    pub fn betti_mod_p_by_rank(&self, q: usize) -> Option<usize> {
        if self.ring.k() != 1 {
            return None;
        }
        let rank = |d: &SparseMatrix| snf_mod(&d.to_dense(), false).rank();
        let rq = if q < self.diffs.len() { rank(&self.diffs[q]) } else { 0 };
        let rq1 = if q > 0 { rank(&self.diffs[q - 1]) } else { 0 };
        Some(self.dims[q] - rq - rq1)
    }
}

/// The decomposition predicted at modulus `p^k` from one at a higher modulus,
/// for complexes that lift to Z_p: each `Z/p^b` becomes `Z/p^{min(b,k)}`.
pub fn truncate_exponents(exps: &[u32], k: u32) -> Vec<u32> {
    let mut v: Vec<u32> = exps.iter().map(|&b| b.min(k)).collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_like_complex() {
        // Z/9 --(3)--> Z/9 : H^0 = {x : 3x = 0} = Z/3, H^1 = Z/9 / 3 = Z/3
        let r = Zpk::new(3, 2).unwrap();
        let mut d = SparseMatrix::zeros(r, 1, 1);
        d.push(0, 0, 3);
        let c = CochainComplex::new(r, vec![1, 1], vec![d]).unwrap();
        c.check_d_squared().unwrap();
        assert_eq!(c.cohomology(0).exponents(), vec![1]);
        assert_eq!(c.cohomology(1).exponents(), vec![1]);
    }
}
