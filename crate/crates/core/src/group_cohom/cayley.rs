//! Cohomology in degrees ≤ 2 from the Cayley graph of a finite group.
//!
//! With `F` free on the generators and `N = ker(F → Q)`, the relation module
//! sequence `0 → N_ab → ZQ^X → ZQ → Z → 0` is exact, so
//! `C^0 = M`, `C^1 = M^X` and `Z^2 = Hom_Q(N_ab, M)` compute `H^0, H^1, H^2`.
//! `N_ab` is free abelian on the Schreier generators `γ_e = t_h x t_{hx}^{-1}`,
//! one per edge `e = (h, x)` outside a spanning tree, so a degree-2 cochain is
//! a value in `M` per non-tree edge.

use super::finite::{FiniteGroup, FiniteModule};
use crate::error::Result;
use crate::padic::complex::SparseMatrix;
use crate::padic::kernel::{KernelBuilder, Subquotient};
use crate::padic::snf::ModMatrix;
use crate::padic::Zpk;

pub struct CayleyModel<'a> {
    pub g: &'a FiniteGroup,
    pub ring: Zpk,
    pub rank: usize,
    rho: Vec<ModMatrix>,
    gen_rho: Vec<ModMatrix>,
    parent: Vec<Option<(u32, u32)>>,
    /// Slot of each edge `v * ngens + s` among the non-tree edges.
    slot: Vec<Option<u32>>,
    nontree: Vec<(u32, u32)>,
}

/// `(vertex, generator, +1/-1)` along a closed path.
type PathEdge = (u32, u32, bool);

impl<'a> CayleyModel<'a> {
    pub fn new(g: &'a FiniteGroup, m: &FiniteModule) -> Result<Self> {
        let rho = m.element_actions(g)?;
        let parent = g.spanning_tree();
        let ng = g.ngens();
        let mut slot = vec![None; g.order * ng];
        let mut nontree = Vec::new();
        for v in 0..g.order {
            for s in 0..ng {
                let w = g.right[v][s] as usize;
                if parent[w] != Some((v as u32, s as u32)) {
                    slot[v * ng + s] = Some(nontree.len() as u32);
                    nontree.push((v as u32, s as u32));
                }
            }
        }
        Ok(CayleyModel { g, ring: m.ring, rank: m.rank, rho, gen_rho: m.gen_actions.clone(), parent, slot, nontree })
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.rank, self.g.ngens() * self.rank, self.nontree.len() * self.rank]
    }

    pub fn nontree_edges(&self) -> &[(u32, u32)] {
        &self.nontree
    }

    pub fn element_action(&self, v: usize) -> &ModMatrix {
        &self.rho[v]
    }

    /// Tree edges from the identity to `v`, in order.
    fn tree_path(&self, mut v: usize) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        while let Some((u, s)) = self.parent[v] {
            out.push((u, s));
            v = u as usize;
        }
        out.reverse();
        out
    }

    /// The closed path of `γ_e`.
    fn gamma(&self, h: usize, s: usize) -> Vec<PathEdge> {
        let mut out: Vec<PathEdge> = self.tree_path(h).into_iter().map(|(u, y)| (u, y, true)).collect();
        out.push((h as u32, s as u32, true));
        let back = self.tree_path(self.g.right[h][s] as usize);
        out.extend(back.into_iter().rev().map(|(u, y)| (u, y, false)));
        out
    }

    fn edge_slot(&self, v: u32, s: u32) -> Option<usize> {
        self.slot[v as usize * self.g.ngens() + s as usize].map(|x| x as usize)
    }

    /// `d^0: M → M^X`, `m ↦ (x·m − m)_x`.
    pub fn d0(&self) -> SparseMatrix {
        let r = self.rank;
        let ring = self.ring;
        let mut d = SparseMatrix::zeros(ring, self.g.ngens() * r, r);
        for (s, a) in self.gen_rho.iter().enumerate() {
            for x in 0..r {
                for y in 0..r {
                    let v = if x == y { ring.sub(a.get(x, y), 1) } else { a.get(x, y) };
                    d.push(s * r + x, y, v);
                }
            }
        }
        d.compact();
        d
    }

    /// `d^1: M^X → Hom(N_ab, M)`, the derivation `D(x) = m_x` evaluated on each `γ_e`.
    pub fn d1(&self) -> SparseMatrix {
        let r = self.rank;
        let ring = self.ring;
        let mut d = SparseMatrix::zeros(ring, self.nontree.len() * r, self.g.ngens() * r);
        for (k, &(h, s)) in self.nontree.iter().enumerate() {
            for (u, y, fwd) in self.gamma(h as usize, s as usize) {
                let a = &self.rho[u as usize];
                for x in 0..r {
                    for z in 0..r {
                        let v = a.get(x, z);
                        if v != 0 {
                            d.push(k * r + x, y as usize * r + z, if fwd { v } else { ring.neg(v) });
                        }
                    }
                }
            }
        }
        d.compact();
        d
    }

    /// Generators of `Hom_Q(N_ab, M)`: `φ(x γ_e x^{-1}) = x·φ(γ_e)` for each generator x.
    pub fn z2(&self) -> Vec<Vec<u64>> {
        let r = self.rank;
        let ring = self.ring;
        let mut kb = KernelBuilder::new(ring, self.nontree.len() * r);
        let mut row: Vec<(usize, u64)> = Vec::new();
        for (k, &(h, s)) in self.nontree.iter().enumerate() {
            let path = self.gamma(h as usize, s as usize);
            for (x, ax) in self.gen_rho.iter().enumerate() {
                for a in 0..r {
                    row.clear();
                    for &(u, y, fwd) in &path {
                        let w = self.g.left[u as usize][x];
                        if let Some(t) = self.edge_slot(w, y) {
                            row.push((t * r + a, if fwd { 1 } else { ring.neg(1) }));
                        }
                    }
                    for b in 0..r {
                        let v = ax.get(a, b);
                        if v != 0 {
                            row.push((k * r + b, ring.neg(v)));
                        }
                    }
                    kb.add_row(&row);
                }
            }
        }
        kb.generators()
    }

    pub fn z1(&self) -> Vec<Vec<u64>> {
        let mut kb = KernelBuilder::new(self.ring, self.dims()[1]);
        for row in &self.d1().entries {
            kb.add_row(row);
        }
        kb.generators()
    }

    pub fn z0(&self) -> Vec<Vec<u64>> {
        let mut kb = KernelBuilder::new(self.ring, self.rank);
        for row in &self.d0().entries {
            kb.add_row(row);
        }
        kb.generators()
    }

    pub fn cocycles(&self, q: usize) -> Vec<Vec<u64>> {
        match q {
            0 => self.z0(),
            1 => self.z1(),
            2 => self.z2(),
            _ => panic!("Cayley model stops at degree 2"),
        }
    }

    pub fn coboundaries(&self, q: usize) -> Vec<Vec<u64>> {
        match q {
            0 => Vec::new(),
            1 => self.d0().columns(),
            2 => self.d1().columns(),
            _ => panic!("Cayley model stops at degree 2"),
        }
    }

    pub fn cohomology(&self, q: usize) -> Subquotient {
        Subquotient::new(self.ring, self.dims()[q], &self.cocycles(q), &self.coboundaries(q))
    }

    /// Pullback along `proj: big → self.g` of a q-cocycle.
    pub fn inflate_to(&self, big: &CayleyModel<'_>, proj: &[u32], q: usize, v: &[u64]) -> Vec<u64> {
        if q < 2 {
            return v.to_vec();
        }
        let r = self.rank;
        let ring = self.ring;
        let mut out = vec![0u64; big.dims()[2]];
        for (k, &(h, s)) in big.nontree.iter().enumerate() {
            for (u, y, fwd) in big.gamma(h as usize, s as usize) {
                if let Some(t) = self.edge_slot(proj[u as usize], y) {
                    for a in 0..r {
                        let x = v[t * r + a];
                        out[k * r + a] = if fwd { ring.add(out[k * r + a], x) } else { ring.sub(out[k * r + a], x) };
                    }
                }
            }
        }
        out
    }

    /// The degree-2 cochain of an inhomogeneous 2-cocycle `f`, through the
    /// extension it defines: `φ(γ_e) = τ(h) + f(h, x) − τ(hx)`.
    pub fn from_bar2(&self, f: &dyn Fn(usize, usize) -> Vec<u64>) -> Vec<u64> {
        let r = self.rank;
        let ring = self.ring;
        let tau = self.tree_potential(f);
        let mut out = vec![0u64; self.dims()[2]];
        for (k, &(h, s)) in self.nontree.iter().enumerate() {
            let hs = self.g.right[h as usize][s as usize] as usize;
            let gen = self.generator_element(s as usize);
            let fv = f(h as usize, gen);
            for a in 0..r {
                out[k * r + a] = ring.sub(ring.add(tau[h as usize][a], fv[a]), tau[hs][a]);
            }
        }
        out
    }

    /// The element `x_s`.
    pub fn generator_element(&self, s: usize) -> usize {
        self.g.right[0][s] as usize
    }

    /// `τ(1) = 0`, `τ(v x) = τ(v) + f(v, x)` along tree edges.
    fn tree_potential(&self, f: &dyn Fn(usize, usize) -> Vec<u64>) -> Vec<Vec<u64>> {
        let r = self.rank;
        let ring = self.ring;
        let mut tau = vec![vec![0u64; r]; self.g.order];
        for v in self.bfs() {
            if let Some((u, s)) = self.parent[v] {
                let fv = f(u as usize, self.generator_element(s as usize));
                tau[v] = (0..r).map(|a| ring.add(tau[u as usize][a], fv[a])).collect();
            }
        }
        tau
    }

    fn bfs(&self) -> Vec<usize> {
        let mut order = vec![0usize];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for (s, &v) in self.g.right[u].iter().enumerate() {
                if self.parent[v as usize] == Some((u as u32, s as u32)) {
                    order.push(v as usize);
                }
            }
            i += 1;
        }
        order
    }

    /// Crossed homomorphism `c: Q → M` with `c(x_s) = m_s`, from a 1-cocycle.
    pub fn crossed_hom(&self, m: &[u64]) -> Vec<Vec<u64>> {
        let r = self.rank;
        let ring = self.ring;
        let mut c = vec![vec![0u64; r]; self.g.order];
        for v in self.bfs() {
            if let Some((u, s)) = self.parent[v] {
                let a = &self.rho[u as usize];
                let ms = &m[s as usize * r..(s as usize + 1) * r];
                let am = a.mul_vec(ms);
                c[v] = (0..r).map(|x| ring.add(c[u as usize][x], am[x])).collect();
            }
        }
        c
    }

    /// `a ∪ b` for 1-cocycles with rank one trivial coefficients.
    pub fn cup11(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        assert_eq!(self.rank, 1, "cup needs rank one coefficients");
        let ring = self.ring;
        let ca = self.crossed_hom(a);
        let cb = self.crossed_hom(b);
        self.from_bar2(&|g, h| vec![ring.mul(ca[g][0], cb[h][0])])
    }
}
