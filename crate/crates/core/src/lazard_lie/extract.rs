//! The lattice `L* = span log(x_i)` of a matrix group, from an ordered basis.

use std::sync::Arc;

use super::lattice::LieLattice;
use crate::error::{Error, Result};
use crate::filtered::{find_ordered_basis, FilteredGroup, OrderedBasis};
use crate::padic::snf::{snf_mod, ModMatrix, ModTransforms};
use crate::padic::{series, Algebra, Val, Zpk};
use crate::pgroups::UnitGroup;

/// Coordinates with respect to a family of algebra elements `δ_1..δ_d`.
#[derive(Clone, Debug)]
pub struct DeltaFrame {
    alg: Arc<Algebra>,
    deltas: Vec<Vec<u64>>,
    tr: ModTransforms,
    exps: Vec<u32>,
    precision: u32,
}

impl DeltaFrame {
    pub fn new(alg: Arc<Algebra>, deltas: Vec<Vec<u64>>) -> Result<Self> {
        let z = alg.zpk();
        let d = deltas.len();
        let mut m = ModMatrix::zeros(z, alg.dim(), d);
        for (j, v) in deltas.iter().enumerate() {
            for (i, &c) in v.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        let s = snf_mod(&m, true);
        if s.rank() < d {
            return Err(Error::Inconsistent(format!("logs of the basis span a rank {} lattice, expected {d}", s.rank())));
        }
        let exps = s.exponents.clone();
        let amax = exps.iter().copied().max().unwrap_or(0);
        let precision = z.k() - amax;
        if precision == 0 {
            return Err(Error::InsufficientPrecision {
                what: "no digits left for structure constants".into(),
                required: z.k() + 1,
            });
        }
        Ok(DeltaFrame { alg, deltas, tr: s.transforms.expect("transforms requested"), exps, precision })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn deltas(&self) -> &[Vec<u64>] {
        &self.deltas
    }

    pub fn rank(&self) -> usize {
        self.deltas.len()
    }

    /// Elementary divisor exponents of the `δ` columns inside the algebra.
    pub fn elementary_exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Coordinates are determined modulo `p^precision`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeff_ring(&self) -> Zpk {
        self.alg.zpk().with_k(self.precision).expect("precision is positive")
    }

    /// Solves `v = Σ c_i δ_i`, `c` mod `p^precision`.
    pub fn express(&self, v: &[u64]) -> Result<Vec<u64>> {
        let z = self.alg.zpk();
        let y = self.tr.p.mul_vec(v);
        let d = self.rank();
        if y[d..].iter().any(|&x| x != 0) {
            return Err(Error::NotInLattice(format!("vector leaves the span of the logs (valuation {})", self.alg.val(v))));
        }
        let mut w = vec![0u64; d];
        for i in 0..d {
            let pa = z.p_pow(self.exps[i]);
            if !y[i].is_multiple_of(pa) {
                return Err(Error::NotInLattice(format!(
                    "coordinate {i} is not divisible by p^{} (valuation {})",
                    self.exps[i],
                    self.alg.val(v)
                )));
            }
            w[i] = y[i] / pa;
        }
        let c = self.tr.q.mul_vec(&w);
        let out = self.coeff_ring();
        Ok(c.into_iter().map(|x| out.reduce_u64(x)).collect())
    }
}

/// `L*(G)` together with the data it was computed from.
#[derive(Clone, Debug)]
pub struct LazardLattice {
    pub lattice: LieLattice,
    pub basis: OrderedBasis,
    pub frame: DeltaFrame,
}

/// `δ_i = log x_i` for an ordered basis `x_i` and `[δ_i, δ_j]` in the `δ`-basis.
pub fn lazard_lie(g: &UnitGroup) -> Result<LazardLattice> {
    let basis = find_ordered_basis(g)?;
    let alg = g.algebra().clone();
    let mut deltas = Vec::with_capacity(basis.rank());
    for (x, &w) in basis.elements.iter().zip(&basis.valuations) {
        let delta = series::log1p(&alg, x)?;
        match g.layout().val(&delta) {
            Val::Exact(v) if v == w => {}
            other => {
                return Err(Error::Inconsistent(format!("log of a basis element has valuation {other}, expected {w}")));
            }
        }
        deltas.push(delta);
    }
    let frame = DeltaFrame::new(alg.clone(), deltas)?;
    let d = frame.rank();
    let k = frame.precision();
    let mut lattice = LieLattice::zero(d, Some((g.p(), k)), format!("L*({})", g.describe()));
    lattice.valuations = basis.valuations.clone();
    for i in 0..d {
        for j in i + 1..d {
            let br = alg.commutator(&frame.deltas[i], &frame.deltas[j]);
            let c = frame.express(&br)?;
            for (l, &x) in c.iter().enumerate() {
                if x != 0 {
                    lattice.set(i, j, l, x as i64);
                }
            }
        }
    }
    if let Some(why) = lattice.defect() {
        return Err(Error::Inconsistent(format!("computed brackets are not a Lie lattice: {why}")));
    }
    Ok(LazardLattice { lattice, basis, frame })
}

/// Outcome of comparing `L*(G)` with `p^r` times the full coordinate lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIdentity {
    pub expected_exponent: u32,
    pub exponents: Vec<u32>,
    pub holds: bool,
}

/// For `G = 1 + p^r M_n(Z_p)`: is `L*(G) = p^r gl_n(Z_p)`? The elementary
/// divisors of the `δ` columns must all be `p^r` and there must be `n²` of them.
pub fn check_lattice_identity(lat: &LazardLattice, r: u32) -> LatticeIdentity {
    let exps = lat.frame.elementary_exponents().to_vec();
    let full = lat.frame.algebra().dim() == lat.frame.rank();
    LatticeIdentity { expected_exponent: r, holds: full && exps.iter().all(|&a| a == r), exponents: exps }
}
