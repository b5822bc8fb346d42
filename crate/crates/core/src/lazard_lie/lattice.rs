//! Lie lattices given by structure constants.

use crate::error::{Error, Result};
use crate::padic::modint::Zpk;
use crate::padic::{parse_q, qi, Q};

/// A free Z_p-Lie lattice `⊕ Z_p e_i` with `[e_i, e_j] = Σ_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieLattice {
    pub d: usize,
    /// `None`: the constants are exact integers. `Some((p, K))`: they are
    /// p-adic and known modulo `p^K`, stored in `[0, p^K)`.
    pub modulus: Option<(u64, u32)>,
    consts: Vec<i64>,
    pub valuations: Vec<Q>,
    pub provenance: String,
}

impl LieLattice {
    pub fn zero(d: usize, modulus: Option<(u64, u32)>, provenance: impl Into<String>) -> Self {
        LieLattice { d, modulus, consts: vec![0; d * d * d], valuations: vec![qi(0); d], provenance: provenance.into() }
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.d + j) * self.d + k
    }

    fn normalize(&self, c: i128) -> i64 {
        match self.modulus {
            None => c as i64,
            Some((p, k)) => {
                let m = (p as i128).pow(k);
                c.rem_euclid(m) as i64
            }
        }
    }

    /// Sets `[e_i, e_j]_k = c` and `[e_j, e_i]_k = -c`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: i64) {
        let a = self.normalize(c as i128);
        let b = self.normalize(-(c as i128));
        let (x, y) = (self.idx(i, j, k), self.idx(j, i, k));
        self.consts[x] = a;
        self.consts[y] = b;
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.consts[self.idx(i, j, k)]
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn bracket(&self, i: usize, j: usize) -> &[i64] {
        let s = self.idx(i, j, 0);
        &self.consts[s..s + self.d]
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(|&c| self.normalize(c as i128) == 0)
    }

    /// Nonzero constants `(i, j, k, c)` with `i < j`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.d {
            for j in i + 1..self.d {
                for k in 0..self.d {
                    let c = self.get(i, j, k);
                    if c != 0 {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    /// Integer constants from the symmetric residues mod `p^K`. Exact when
    /// the true constants are small integers, which is the case for the
    /// matrix fixtures.
    pub fn lift_exact(&self) -> LieLattice {
        let mut out = LieLattice::zero(self.d, None, format!("{} (lifted)", self.provenance));
        out.valuations = self.valuations.clone();
        for (i, j, k, c) in self.nonzero() {
            let c = match self.modulus {
                Some((p, kk)) => {
                    let m = (p as i64).pow(kk);
                    if c > m / 2 {
                        c - m
                    } else {
                        c
                    }
                }
                None => c,
            };
            out.set(i, j, k, c);
        }
        out
    }

    /// Constants reduced into `Z/p^k`; fails if they are not known that far.
    pub fn reduce(&self, ring: Zpk) -> Result<Vec<u64>> {
        if let Some((p, k)) = self.modulus {
            if p != ring.p() || ring.k() > k {
                return Err(Error::InsufficientPrecision {
                    what: format!("structure constants known mod {p}^{k}, requested mod {}^{}", ring.p(), ring.k()),
                    required: ring.k(),
                });
            }
        }
        Ok(self.consts.iter().map(|&c| ring.reduce_i64(c)).collect())
    }

    /// First `(i, j, k, what)` where antisymmetry or the Jacobi identity fails.
    pub fn defect(&self) -> Option<String> {
        let d = self.d;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let s = self.normalize(self.get(i, j, k) as i128 + self.get(j, i, k) as i128);
                    if s != 0 {
                        return Some(format!("antisymmetry fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        // Σ_cyc [[e_i, e_j], e_l] = Σ_cyc Σ_k c_ij^k c_kl^m e_m
        for i in 0..d {
            for j in i + 1..d {
                for l in j + 1..d {
                    for m in 0..d {
                        let mut acc: i128 = 0;
                        for &(a, b, c) in &[(i, j, l), (j, l, i), (l, i, j)] {
                            for k in 0..d {
                                acc += self.get(a, b, k) as i128 * self.get(k, c, m) as i128;
                            }
                        }
                        if self.normalize(acc) != 0 {
                            return Some(format!("Jacobi fails for ({i},{j},{l}) in coordinate {m}"));
                        }
                    }
                }
            }
        }
        None
    }

    /// `ad(e_i)` as a `d×d` matrix (column j = `[e_i, e_j]`).
    pub fn ad(&self, i: usize) -> Vec<Vec<i64>> {
        let d = self.d;
        let mut m = vec![vec![0i64; d]; d];
        for j in 0..d {
            for (k, &c) in self.bracket(i, j).iter().enumerate() {
                m[k][j] = c;
            }
        }
        m
    }

    /// Text form: `d <n>`, `valuations ...`, optional `modulus <p> <K>`, then
    /// lines `i j k c` for `[e_i, e_j] = ... + c e_k` with `i < j`.
    pub fn to_text(&self) -> String {
        let mut s = format!("# {}\nd {}\n", self.provenance, self.d);
        s.push_str("valuations");
        for v in &self.valuations {
            s.push_str(&format!(" {v}"));
        }
        s.push('\n');
        if let Some((p, k)) = self.modulus {
            s.push_str(&format!("modulus {p} {k}\n"));
        }
        for (i, j, k, c) in self.nonzero() {
            s.push_str(&format!("{i} {j} {k} {c}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut d: Option<usize> = None;
        let mut vals: Option<Vec<Q>> = None;
        let mut modulus = None;
        let mut entries = Vec::new();
        let mut provenance = String::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let perr = |msg: String| Error::Parse { line: ln + 1, msg };
            if let Some(c) = line.strip_prefix('#') {
                if provenance.is_empty() {
                    provenance = c.trim().to_string();
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "d" => d = Some(toks.get(1).and_then(|t| t.parse().ok()).ok_or_else(|| perr("bad rank".into()))?),
                "valuations" => {
                    vals = Some(
                        toks[1..]
                            .iter()
                            .map(|t| parse_q(t).ok_or_else(|| perr(format!("bad valuation {t:?}"))))
                            .collect::<Result<_>>()?,
                    )
                }
                "modulus" => {
                    let p = toks.get(1).and_then(|t| t.parse().ok()).ok_or_else(|| perr("bad modulus".into()))?;
                    let k = toks.get(2).and_then(|t| t.parse().ok()).ok_or_else(|| perr("bad modulus".into()))?;
                    modulus = Some((p, k));
                }
                _ => {
                    if toks.len() != 4 {
                        return Err(perr("expected `i j k c`".into()));
                    }
                    let n: Vec<i64> =
                        toks.iter().map(|t| t.parse::<i64>().map_err(|_| perr(format!("bad integer {t:?}")))).collect::<Result<_>>()?;
                    entries.push((ln + 1, n));
                }
            }
        }
        let d = d.ok_or(Error::Parse { line: 0, msg: "missing `d`".into() })?;
        let mut l = LieLattice::zero(d, modulus, provenance);
        if let Some(v) = vals {
            if v.len() != d {
                return Err(Error::Parse { line: 0, msg: format!("{} valuations for rank {d}", v.len()) });
            }
            l.valuations = v;
        }
        for (line, n) in entries {
            let (i, j, k) = (n[0] as usize, n[1] as usize, n[2] as usize);
            if i >= d || j >= d || k >= d || n[0] < 0 || n[1] < 0 || n[2] < 0 || i == j {
                return Err(Error::Parse { line, msg: "index out of range".into() });
            }
            l.set(i, j, k, n[3]);
        }
        if let Some(why) = l.defect() {
            return Err(Error::InvalidInput(format!("not a Lie lattice: {why}")));
        }
        Ok(l)
    }
}

/// The abelian lattice of rank d.
pub fn abelian(d: usize) -> LieLattice {
    let mut l = LieLattice::zero(d, None, format!("abelian rank {d}"));
    l.valuations = vec![qi(1); d];
    l
}

/// `p·heis` on `(δ1, δ2, δ3)` with `[δ1, δ2] = p δ3`.
pub fn heisenberg(p: u64) -> LieLattice {
    let mut l = LieLattice::zero(3, None, format!("{p}*heisenberg"));
    l.set(0, 1, 2, p as i64);
    l.valuations = vec![qi(1); 3];
    l
}

/// The lattice `ΠO` of the quaternion order on the basis `(Π, uΠ, p, up)`
/// with `u² = c`: `[e1,e2] = -2 e4`, `[e1,e4] = -2p e2`, `[e2,e4] = -2cp e1`.
pub fn quaternion(p: u64, c: i64) -> LieLattice {
    let mut l = LieLattice::zero(4, None, format!("Pi*O in the quaternion order, p={p}, c={c}"));
    let pp = p as i64;
    l.set(0, 1, 3, -2);
    l.set(0, 3, 1, -2 * pp);
    l.set(1, 3, 0, -2 * c * pp);
    l.valuations = vec![Q::new(1, 2), Q::new(1, 2), qi(1), qi(1)];
    l
}

/// `p·gl_n(Z_p)` on the basis `p E_ij` (index `i*n + j`):
/// `[pE_ij, pE_kl] = p (δ_jk pE_il − δ_li pE_kj)`.
pub fn scaled_gl(p: u64, n: usize) -> LieLattice {
    let d = n * n;
    let mut l = LieLattice::zero(d, None, format!("{p}*gl_{n}"));
    let pp = p as i64;
    for a in 0..d {
        for b in a + 1..d {
            let (i, j, k, m) = (a / n, a % n, b / n, b % n);
            let mut v = vec![0i64; d];
            if j == k {
                v[i * n + m] += pp;
            }
            if m == i {
                v[k * n + j] -= pp;
            }
            for (c, &x) in v.iter().enumerate() {
                if x != 0 {
                    l.set(a, b, c, x);
                }
            }
        }
    }
    l.valuations = vec![qi(1); d];
    l
}
