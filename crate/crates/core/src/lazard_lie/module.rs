//! Lie modules over Z/p^k and the passage from group modules to Lie modules.

use std::fmt;
use std::str::FromStr;

use super::extract::LazardLattice;
use super::lattice::LieLattice;
use crate::error::{Error, Result};
use crate::filtered::Elem;
use crate::padic::snf::ModMatrix;
use crate::padic::{series, Algebra, RingSpec, Zpk};
use crate::pgroups::UnitGroup;

/// A free `Z/p^k`-module of rank `m` with `e_i` acting by `actions[i]`.
#[derive(Clone, Debug)]
pub struct LieModule {
    pub ring: Zpk,
    pub rank: usize,
    pub actions: Vec<ModMatrix>,
}

impl LieModule {
    /// Checks `A_i A_j - A_j A_i = Σ_k c_ij^k A_k`.
    pub fn new(lattice: &LieLattice, ring: Zpk, actions: Vec<ModMatrix>) -> Result<Self> {
        if actions.len() != lattice.d {
            return Err(Error::InvalidInput(format!("{} actions for a rank {} lattice", actions.len(), lattice.d)));
        }
        let rank = actions.first().map_or(0, |a| a.rows);
        let c = lattice.reduce(ring)?;
        let d = lattice.d;
        for i in 0..d {
            for j in i + 1..d {
                let lhs = sub(&actions[i].mul(&actions[j]), &actions[j].mul(&actions[i]));
                let mut rhs = ModMatrix::zeros(ring, rank, rank);
                for k in 0..d {
                    let ck = c[(i * d + j) * d + k];
                    if ck != 0 {
                        rhs = add(&rhs, &scale(&actions[k], ck));
                    }
                }
                if lhs != rhs {
                    return Err(Error::ModuleImage {
                        generator: i,
                        reason: format!("bracket relation fails for ({i},{j})"),
                    });
                }
            }
        }
        Ok(LieModule { ring, rank, actions })
    }

    pub fn trivial(d: usize, rank: usize, ring: Zpk) -> Self {
        LieModule { ring, rank, actions: vec![ModMatrix::zeros(ring, rank, rank); d] }
    }

    pub fn adjoint(lattice: &LieLattice, ring: Zpk) -> Result<Self> {
        let actions = (0..lattice.d)
            .map(|i| ModMatrix::from_rows(ring, &lattice.ad(i)))
            .collect();
        LieModule::new(lattice, ring, actions)
    }

    pub fn is_trivial(&self) -> bool {
        self.actions.iter().all(|a| a.is_zero())
    }
}

fn add(a: &ModMatrix, b: &ModMatrix) -> ModMatrix {
    let r = a.ring;
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(i, j, r.add(a.get(i, j), b.get(i, j)));
        }
    }
    out
}

fn sub(a: &ModMatrix, b: &ModMatrix) -> ModMatrix {
    let r = a.ring;
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(i, j, r.sub(a.get(i, j), b.get(i, j)));
        }
    }
    out
}

fn scale(a: &ModMatrix, s: u64) -> ModMatrix {
    let r = a.ring;
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(i, j, r.mul(a.get(i, j), s));
        }
    }
    out
}

/// `log(ρ)` for `ρ ∈ 1 + p End(M)`, computed in `M_m(Z_p)` truncated mod p^k.
pub fn matrix_log(rho: &ModMatrix) -> Result<ModMatrix> {
    let ring = rho.ring;
    let m = rho.rows;
    let alg = Algebra::matrix(&RingSpec::unramified(ring.p(), ring.k())?, m)?;
    let mut y = alg.zero();
    for i in 0..m {
        for j in 0..m {
            let v = if i == j { ring.sub(rho.get(i, j), 1) } else { rho.get(i, j) };
            y[i * m + j] = v;
        }
    }
    let l = series::log1p(&alg, &y)?;
    let mut out = ModMatrix::zeros(ring, m, m);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, l[i * m + j]);
        }
    }
    Ok(out)
}

/// Coefficient modules built into the tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Trivial { rank: usize },
    /// Conjugation on `L*(G)` itself.
    Adjoint,
    /// `g ↦ det(g)` on a rank one module.
    Det,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Trivial { rank: 1 } => write!(f, "trivial"),
            Coefficients::Trivial { rank } => write!(f, "trivial:{rank}"),
            Coefficients::Adjoint => write!(f, "adjoint"),
            Coefficients::Det => write!(f, "det"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some(("trivial", r)) => r
                .parse()
                .map(|rank| Coefficients::Trivial { rank })
                .map_err(|_| Error::InvalidInput(format!("bad rank in {s:?}"))),
            None if s == "trivial" => Ok(Coefficients::Trivial { rank: 1 }),
            None if s == "adjoint" => Ok(Coefficients::Adjoint),
            None if s == "det" => Ok(Coefficients::Det),
            _ => Err(Error::InvalidInput(format!("unknown coefficients {s:?}"))),
        }
    }
}

/// A `G`-module on `(Z/p^k)^m` given by a formula on group elements.
#[derive(Clone, Debug)]
pub struct GroupModule<'a> {
    pub group: &'a UnitGroup,
    pub lattice: &'a LazardLattice,
    pub ring: Zpk,
    pub coeffs: Coefficients,
}

impl<'a> GroupModule<'a> {
    pub fn new(group: &'a UnitGroup, lattice: &'a LazardLattice, ring: Zpk, coeffs: Coefficients) -> Result<Self> {
        if ring.p() != group.algebra().p() {
            return Err(Error::InvalidInput("coefficient prime differs from the group's".into()));
        }
        if coeffs == Coefficients::Adjoint && ring.k() > lattice.frame.precision() {
            return Err(Error::InsufficientPrecision {
                what: "adjoint action needs the lattice coordinates mod p^k".into(),
                required: group.algebra().digits() + ring.k() - lattice.frame.precision(),
            });
        }
        if coeffs == Coefficients::Det && group.algebra().ramification() != 1 {
            return Err(Error::Unsupported("det coefficients need an unramified matrix algebra".into()));
        }
        Ok(GroupModule { group, lattice, ring, coeffs })
    }

    pub fn rank(&self) -> usize {
        match self.coeffs {
            Coefficients::Trivial { rank } => rank,
            Coefficients::Adjoint => self.lattice.lattice.d,
            Coefficients::Det => 1,
        }
    }

    pub fn is_trivial_action(&self) -> bool {
        matches!(self.coeffs, Coefficients::Trivial { .. })
    }

    /// `ρ(x)` as a matrix acting on column vectors.
    pub fn action(&self, x: &Elem) -> Result<ModMatrix> {
        let ring = self.ring;
        match self.coeffs {
            Coefficients::Trivial { rank } => Ok(ModMatrix::identity(ring, rank)),
            Coefficients::Adjoint => {
                let alg = self.group.algebra();
                let a = self.group.to_algebra(x);
                let ainv = self.group.to_algebra(&crate::filtered::FilteredGroup::inv(self.group, x));
                let d = self.lattice.lattice.d;
                let mut out = ModMatrix::zeros(ring, d, d);
                for (j, delta) in self.lattice.frame.deltas().iter().enumerate() {
                    let conj = alg.mul(&alg.mul(&a, delta), &ainv);
                    let c = self.lattice.frame.express(&conj)?;
                    for (i, v) in c.into_iter().enumerate() {
                        out.set(i, j, ring.reduce_u64(v));
                    }
                }
                Ok(out)
            }
            Coefficients::Det => {
                let alg = self.group.algebra();
                let n = alg.matrix_size().ok_or_else(|| Error::Unsupported("det needs a matrix algebra".into()))?;
                let a = self.group.to_algebra(x);
                let z = alg.zpk();
                let mut m = vec![vec![0u64; n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    for (j, v) in row.iter_mut().enumerate() {
                        *v = a[i * n + j];
                    }
                }
                let d = det(z, &m);
                let mut out = ModMatrix::zeros(ring, 1, 1);
                out.set(0, 0, ring.reduce_u64(d));
                Ok(out)
            }
        }
    }

    /// The Lie module with `δ_i` acting by `log ρ(x_i)`.
    pub fn induced(&self) -> Result<LieModule> {
        let p = self.ring.p();
        let mut actions = Vec::new();
        for (i, x) in self.lattice.basis.elements.iter().enumerate() {
            let rho = self.action(x)?;
            let y = sub(&rho, &ModMatrix::identity(self.ring, rho.rows));
            let need = if p == 2 { 2 } else { 1 };
            if (0..y.rows).any(|r| (0..y.cols).any(|c| y.get(r, c) != 0 && self.ring.val(y.get(r, c)) < need)) {
                return Err(Error::ModuleImage {
                    generator: i,
                    reason: format!("action is not congruent to 1 mod {}", if p == 2 { 4 } else { p }),
                });
            }
            actions.push(matrix_log(&rho)?);
        }
        LieModule::new(&self.lattice.lattice, self.ring, actions)
    }

    /// The Lie module predicted in closed form: zero, `ad`, or the trace.
    pub fn expected_lie_module(&self) -> Result<LieModule> {
        let lat = &self.lattice.lattice;
        match self.coeffs {
            Coefficients::Trivial { rank } => Ok(LieModule::trivial(lat.d, rank, self.ring)),
            Coefficients::Adjoint => LieModule::adjoint(lat, self.ring),
            Coefficients::Det => {
                let alg = self.group.algebra();
                let n = alg.matrix_size().expect("checked in new");
                let actions = self
                    .lattice
                    .frame
                    .deltas()
                    .iter()
                    .map(|delta| {
                        let tr = (0..n).fold(0u64, |acc, i| alg.zpk().add(acc, delta[i * n + i]));
                        let mut m = ModMatrix::zeros(self.ring, 1, 1);
                        m.set(0, 0, self.ring.reduce_u64(tr));
                        m
                    })
                    .collect();
                LieModule::new(lat, self.ring, actions)
            }
        }
    }
}

/// Determinant by cofactor expansion; `n` is tiny.
fn det(z: Zpk, m: &[Vec<u64>]) -> u64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0u64;
    for j in 0..n {
        let minor: Vec<Vec<u64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
        let t = z.mul(m[0][j], det(z, &minor));
        acc = if j % 2 == 0 { z.add(acc, t) } else { z.sub(acc, t) };
    }
    acc
}
