//! Kernels and subquotients of free Z/p^k-modules.
//!
//! `KernelBuilder` intersects a generating set with one linear constraint at a
//! time, so a sparse system with many more equations than unknowns never has to
//! be stored. `Subquotient` reads off `span(K)/span(I)` as a sum of cyclic
//! modules and converts vectors to class coordinates.

use super::modint::Zpk;
use super::snf::{snf_mod, ModMatrix};

/// Generators of `{x : row·x = 0 for every row added so far}`.
#[derive(Clone, Debug)]
pub struct KernelBuilder {
    ring: Zpk,
    n: usize,
    /// `gens[v][j]` = coordinate `v` of generator `j`.
    gens: Vec<Vec<u64>>,
    count: usize,
}

impl KernelBuilder {
    pub fn new(ring: Zpk, n: usize) -> Self {
        let gens = (0..n)
            .map(|v| {
                let mut row = vec![0u64; n];
                row[v] = 1;
                row
            })
            .collect();
        KernelBuilder { ring, n, gens, count: n }
    }

    /// Starts from an explicit generating set instead of the whole space.
    pub fn from_generators(ring: Zpk, n: usize, generators: &[Vec<u64>]) -> Self {
        let mut gens = vec![Vec::with_capacity(generators.len()); n];
        for g in generators {
            assert_eq!(g.len(), n);
            for (v, &x) in g.iter().enumerate() {
                gens[v].push(x);
            }
        }
        KernelBuilder { ring, n, gens, count: generators.len() }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.count
    }

    /// Imposes `Σ coef·x_var = 0`.
    pub fn add_row(&mut self, row: &[(usize, u64)]) {
        if self.count == 0 {
            return;
        }
        let r = self.ring;
        let mut vals = vec![0u64; self.count];
        for &(v, c) in row {
            if c == 0 {
                continue;
            }
            for (slot, &g) in vals.iter_mut().zip(&self.gens[v]) {
                if g != 0 {
                    *slot = r.mul_add(*slot, c, g);
                }
            }
        }
        let mut pivot: Option<(u32, usize)> = None;
        for (j, &c) in vals.iter().enumerate() {
            if c != 0 {
                let a = r.val(c);
                if pivot.is_none_or(|(b, _)| a < b) {
                    pivot = Some((a, j));
                    if a == 0 {
                        break;
                    }
                }
            }
        }
        let Some((a, j0)) = pivot else { return };
        let (_, unit) = r.split(vals[j0]);
        let uinv = r.inv(unit).unwrap();
        let pa = r.p_pow(a);
        let mut updates: Vec<(usize, u64)> = Vec::new();
        for (j, &c) in vals.iter().enumerate() {
            if j != j0 && c != 0 {
                let t = r.mul(c / pa, uinv);
                updates.push((j, r.neg(t)));
            }
        }
        let scale = r.p_pow(r.k() - a);
        let mut pivot_alive = false;
        for row in self.gens.iter_mut() {
            let g0 = row[j0];
            if g0 != 0 {
                for &(j, s) in &updates {
                    row[j] = r.mul_add(row[j], s, g0);
                }
                let ng = r.mul(g0, scale);
                row[j0] = ng;
                pivot_alive |= ng != 0;
            }
        }
        if !pivot_alive {
            for row in self.gens.iter_mut() {
                row.swap_remove(j0);
            }
            self.count -= 1;
        }
    }

    pub fn generators(&self) -> Vec<Vec<u64>> {
        (0..self.count).map(|j| self.gens.iter().map(|row| row[j]).collect()).collect()
    }
}

/// Structure of `span(K)/span(I)` for `I ⊆ span(K)` inside `(Z/p^k)^n`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ring: Zpk,
    n: usize,
    /// Left SNF transform of the kernel generator matrix.
    p: ModMatrix,
    /// Exponents `a_i` of the kernel generators, `i < r`.
    a: Vec<u32>,
    /// Left SNF transform of the relation matrix in class coordinates.
    pr: ModMatrix,
    /// Orders `p^{b_j}` of the cyclic summands (including trivial ones, `b_j = 0`).
    b: Vec<u32>,
    reps: Vec<Vec<u64>>,
}

impl Subquotient {
    pub fn new(ring: Zpk, n: usize, kernel: &[Vec<u64>], image: &[Vec<u64>]) -> Self {
        let k = ring.k();
        let mut gm = ModMatrix::zeros(ring, n, kernel.len());
        for (j, g) in kernel.iter().enumerate() {
            for (v, &x) in g.iter().enumerate() {
                gm.set(v, j, x);
            }
        }
        let s = snf_mod(&gm, true);
        let tr = s.transforms.expect("transforms requested");
        let a: Vec<u32> = s.exponents.iter().copied().filter(|&x| x < k).collect();
        let r = a.len();
        // relation matrix: images in class coordinates, then p^{k-a_i} e_i
        let mut rel = ModMatrix::zeros(ring, r, image.len() + r);
        for (c, y) in image.iter().enumerate() {
            let py = tr.p.mul_vec(y);
            for i in 0..r {
                let pa = ring.p_pow(a[i]);
                debug_assert!(a[i] == 0 || py[i].is_multiple_of(pa), "image not inside the kernel span");
                rel.set(i, c, py[i] / pa);
            }
            if cfg!(debug_assertions) {
                for &x in &py[r..] {
                    debug_assert_eq!(x, 0, "image not inside the kernel span");
                }
            }
        }
        for i in 0..r {
            rel.set(i, image.len() + i, ring.p_pow(k - a[i]));
        }
        let sr = snf_mod(&rel, true);
        let trr = sr.transforms.expect("transforms requested");
        let b: Vec<u32> = sr.exponents.clone();
        let mut reps = Vec::new();
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            // w = P_R^{-1} e_j, then y = P^{-1} diag(p^a) w
            let mut pw = vec![0u64; n];
            for i in 0..r {
                pw[i] = ring.mul(trr.p_inv.get(i, j), ring.p_pow(a[i]));
            }
            reps.push(tr.p_inv.mul_vec(&pw));
        }
        Subquotient { ring, n, p: tr.p, a, pr: trr.p, b, reps }
    }

    pub fn ring(&self) -> Zpk {
        self.ring
    }

    /// Exponents of the nontrivial cyclic summands, non-decreasing.
    pub fn exponents(&self) -> Vec<u32> {
        self.b.iter().copied().filter(|&x| x > 0).collect()
    }

    /// Number of cyclic summands (the mod-p dimension).
    pub fn dim_mod_p(&self) -> usize {
        self.exponents().len()
    }

    /// Cocycle representatives, one per nontrivial summand.
    pub fn representatives(&self) -> &[Vec<u64>] {
        &self.reps
    }

    /// Class coordinates of `y`, one entry mod `p^{b_j}` per nontrivial summand;
    /// `None` if `y` is not in `span(K)`.
    pub fn class_of(&self, y: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(y.len(), self.n);
        let ring = self.ring;
        let py = self.p.mul_vec(y);
        let r = self.a.len();
        if py[r..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut w = vec![0u64; r];
        for i in 0..r {
            let pa = ring.p_pow(self.a[i]);
            if !py[i].is_multiple_of(pa) {
                return None;
            }
            w[i] = py[i] / pa;
        }
        let z = self.pr.mul_vec(&w);
        Some(
            self.b
                .iter()
                .zip(z)
                .filter(|(&bj, _)| bj > 0)
                .map(|(&bj, x)| if bj >= ring.k() { x } else { x % ring.p_pow(bj) })
                .collect(),
        )
    }

    pub fn is_trivial_class(&self, y: &[u64]) -> Option<bool> {
        self.class_of(y).map(|c| c.iter().all(|&x| x == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_single_equation() {
        let r = Zpk::new(3, 2).unwrap();
        let mut kb = KernelBuilder::new(r, 2);
        // 3x + 3y = 0 mod 9: kernel = {x + y ≡ 0 mod 3}
        kb.add_row(&[(0, 3), (1, 3)]);
        let gens = kb.generators();
        for g in &gens {
            assert_eq!((3 * g[0] + 3 * g[1]) % 9, 0);
        }
        let sq = Subquotient::new(r, 2, &gens, &[]);
        // kernel ≅ Z/9 ⊕ Z/3 (x+y ≡ 0 mod 3 has 27 solutions)
        assert_eq!(sq.exponents(), vec![1, 2]);
    }

    #[test]
    fn subquotient_of_cyclic() {
        let r = Zpk::new(3, 2).unwrap();
        let full = vec![vec![1u64]];
        let sq = Subquotient::new(r, 1, &full, &[vec![3]]);
        assert_eq!(sq.exponents(), vec![1]);
        assert_eq!(sq.is_trivial_class(&[6]), Some(true));
        assert_eq!(sq.is_trivial_class(&[1]), Some(false));
        let rep = &sq.representatives()[0];
        assert_eq!(sq.class_of(rep).unwrap(), vec![1]);
    }
}
