//! Explicit finite groups on `0..order` (0 is the identity) and modules over them.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::padic::snf::ModMatrix;
use crate::padic::Zpk;
use crate::pgroups::{FiniteQuotient, QuotientTower};

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub p: u64,
    pub order: usize,
    pub label: String,
    /// `right[a][s]` = `a · x_s`.
    pub right: Vec<Vec<u32>>,
    /// `left[a][s]` = `x_s · a`.
    pub left: Vec<Vec<u32>>,
    table: Option<Vec<u32>>,
    /// Packed pcgs exponents when the group is a quotient of a filtered group.
    keys: Option<Vec<u64>>,
    /// `log_p order` for quotients.
    pub level: Option<usize>,
}

impl FiniteGroup {
    pub fn ngens(&self) -> usize {
        self.right.first().map_or(0, |r| r.len())
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.as_ref().expect("multiplication table")[a * self.order + b] as usize
    }

    /// Closes `gens` under `mul`, keeping the full table.
    pub fn generate<T, F>(p: u64, label: impl Into<String>, identity: T, gens: Vec<T>, mul: F, cap: usize) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for s in &gens {
                let y = mul(&elems[a], s);
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded { what: "finite group order".into(), required: cap as u128 + 1, cap: cap as u128 });
                    }
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elems[a], &elems[b])];
            }
        }
        let gi: Vec<usize> = gens.iter().map(|s| index[s] as usize).collect();
        let right = (0..n).map(|a| gi.iter().map(|&s| table[a * n + s]).collect()).collect();
        let left = (0..n).map(|a| gi.iter().map(|&s| table[s * n + a]).collect()).collect();
        Ok(FiniteGroup { p, order: n, label: label.into(), right, left, table: Some(table), keys: None, level: None })
    }

    /// `Z/p^a` with generator 1.
    pub fn cyclic(p: u64, a: u32) -> Result<Self> {
        let n = p.pow(a);
        Self::generate(p, format!("Z/{n}"), 0u64, vec![1], |x, y| (x + y) % n, n as usize)
    }

    /// `(Z/p^a)^d` with the standard generators.
    pub fn abelian(p: u64, a: u32, d: usize) -> Result<Self> {
        let n = p.pow(a);
        let gens = (0..d)
            .map(|i| {
                let mut v = vec![0u64; d];
                v[i] = 1;
                v
            })
            .collect();
        Self::generate(
            p,
            format!("(Z/{n})^{d}"),
            vec![0u64; d],
            gens,
            |x, y| x.iter().zip(y).map(|(a, b)| (a + b) % n).collect(),
            usize::MAX,
        )
    }

    /// Upper unitriangular 3×3 matrices over F_p, as `(a, b, c)` = `E12, E23, E13` entries.
    pub fn heisenberg_mod_p(p: u64) -> Result<Self> {
        let mul = move |x: &[u64; 3], y: &[u64; 3]| [(x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p];
        Self::generate(p, format!("Heis(F_{p})"), [0u64; 3], vec![[1, 0, 0], [0, 1, 0]], mul, usize::MAX)
    }

    /// A quotient of a filtered group; `table` also fills in the full table.
    pub fn from_quotient(tower: &QuotientTower<'_>, q: &FiniteQuotient, table: bool) -> Self {
        let g = tower.group();
        let n = q.order;
        let left = (0..n)
            .map(|a| q.gens.iter().map(|s| q.index_of(tower, &g.mul(s, &q.reps[a])) as u32).collect())
            .collect();
        let table = table.then(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = q.index_of(tower, &g.mul(&q.reps[a], &q.reps[b])) as u32;
                }
            }
            t
        });
        FiniteGroup {
            p: q.p,
            order: n,
            label: format!("{} / N_{}", g.describe(), q.j),
            right: q.right.clone(),
            left,
            table,
            keys: Some(q.keys.clone()),
            level: Some(q.j),
        }
    }

    /// The surjection `self → small` when both are quotients of one tower.
    pub fn projection_to(&self, small: &FiniteGroup) -> Result<Vec<u32>> {
        let (Some(kb), Some(ks), Some(j)) = (&self.keys, &small.keys, small.level) else {
            return Err(Error::InvalidInput("projection needs two quotients of one filtered group".into()));
        };
        if self.ngens() != small.ngens() || self.level.is_none_or(|l| l < j) {
            return Err(Error::InvalidInput("quotients are not comparable".into()));
        }
        let index: HashMap<u64, u32> = ks.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let m = self.p.pow(j as u32);
        let proj: Vec<u32> = kb
            .iter()
            .map(|&k| index.get(&(k % m)).copied().ok_or_else(|| Error::Inconsistent("key has no image".into())))
            .collect::<Result<_>>()?;
        for a in 0..self.order {
            for s in 0..self.ngens() {
                if proj[self.right[a][s] as usize] != small.right[proj[a] as usize][s] {
                    return Err(Error::Inconsistent("projection is not a homomorphism".into()));
                }
            }
        }
        Ok(proj)
    }

    /// BFS spanning tree along right multiplication: `parent[v] = (u, s)` with `v = u · x_s`.
    pub fn spanning_tree(&self) -> Vec<Option<(u32, u32)>> {
        let mut parent = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for (s, &v) in self.right[u].iter().enumerate() {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    parent[v as usize] = Some((u as u32, s as u32));
                    queue.push_back(v as usize);
                }
            }
        }
        parent
    }
}

/// A free `Z/p^k`-module of rank `r` with generators acting by matrices.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    pub ring: Zpk,
    pub rank: usize,
    pub gen_actions: Vec<ModMatrix>,
}

impl FiniteModule {
    pub fn trivial(ring: Zpk, rank: usize, ngens: usize) -> Self {
        FiniteModule { ring, rank, gen_actions: vec![ModMatrix::identity(ring, rank); ngens] }
    }

    pub fn is_trivial(&self) -> bool {
        let id = ModMatrix::identity(self.ring, self.rank);
        self.gen_actions.iter().all(|a| *a == id)
    }

    /// `ρ(g)` for every element; fails when the generator matrices do not
    /// define an action of this group.
    pub fn element_actions(&self, g: &FiniteGroup) -> Result<Vec<ModMatrix>> {
        if self.gen_actions.len() != g.ngens() {
            return Err(Error::InvalidInput("one action matrix per generator expected".into()));
        }
        let mut rho: Vec<Option<ModMatrix>> = vec![None; g.order];
        rho[0] = Some(ModMatrix::identity(self.ring, self.rank));
        for (v, par) in bfs_order(g) {
            if let Some((u, s)) = par {
                let m = rho[u].as_ref().expect("parent first").mul(&self.gen_actions[s]);
                rho[v] = Some(m);
            }
        }
        let rho: Vec<ModMatrix> = rho.into_iter().map(|m| m.expect("group is generated")).collect();
        for a in 0..g.order {
            for s in 0..g.ngens() {
                if rho[g.right[a][s] as usize] != rho[a].mul(&self.gen_actions[s]) {
                    return Err(Error::Hypothesis(format!("the action does not factor through {}", g.label)));
                }
            }
        }
        Ok(rho)
    }
}

fn bfs_order(g: &FiniteGroup) -> Vec<(usize, Option<(usize, usize)>)> {
    let parent = g.spanning_tree();
    let mut order = vec![(0usize, None)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for (s, &v) in g.right[u].iter().enumerate() {
            let v = v as usize;
            if parent[v] == Some((u as u32, s as u32)) {
                order.push((v, Some((u, s))));
                queue.push_back(v);
            }
        }
    }
    order
}
