//! Groups with a filtration ω, axiom checks, graded pieces, ordered bases and
//! filtered-free modules.

mod axioms;
mod graded;
mod module;
mod pcgs;

use rand::RngCore;

use crate::padic::{Val, Q};
use crate::Result;

pub use axioms::{check_filtration, check_filtration_on, AxiomId, AxiomResult, AxiomStatus, FiltrationReport};
pub(crate) use graded::whole_group;
pub use graded::{find_ordered_basis, graded_pieces, GradedPiece, OrderedBasis};
pub use module::{groupring_valuation, saturate_filtered_free, FilteredFreeModule, ModuleSide, Saturated};
pub use pcgs::Pcgs;

/// Group elements are coordinate vectors; the identity is all zeros.
pub type Elem = Vec<u64>;

/// A group with a filtration, truncated at a working precision.
///
/// Leading terms: for each degree ν the group exposes an F_p-vector of "digits
/// at ν" such that `leading(xy, ν) = leading(x, ν) + leading(y, ν)` whenever
/// `ω(x), ω(y) ≥ ν`. This is what makes gr(G) computable.
pub trait FilteredGroup: Send + Sync {
    fn describe(&self) -> String;
    fn p(&self) -> u64;
    /// Denominator of the value group.
    fn ramification(&self) -> u32;
    fn omega(&self, x: &[u64]) -> Val;
    /// Smallest value of ω on the group.
    fn min_valuation(&self) -> Q;
    /// ω of an element that is the identity at working precision.
    fn precision(&self) -> Q;
    /// Drops everything of filtration `>= level`, i.e. maps to `G / G_level`.
    fn reduce_level(&self, x: &[u64], level: Q) -> Elem;
    fn leading(&self, x: &[u64], nu: Q) -> Vec<u64>;
    /// Elements of filtration ν whose leading vectors are the standard basis at ν.
    fn degree_generators(&self, nu: Q) -> Vec<Elem>;
    fn identity(&self) -> Elem;
    fn mul(&self, x: &[u64], y: &[u64]) -> Elem;
    fn inv(&self, x: &[u64]) -> Elem;
    fn contains(&self, x: &[u64]) -> bool;
    fn random_element(&self, rng: &mut dyn RngCore) -> Elem;
    /// `Some(y)` with `y^p = x` in the group, `None` if there is none.
    fn pth_root(&self, x: &[u64]) -> Result<Option<Elem>>;
    fn complete_by_construction(&self) -> bool {
        true
    }

    fn is_identity(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    /// Value-group step `1/e`.
    fn step(&self) -> Q {
        Q::new(1, self.ramification() as i64)
    }

    fn pow(&self, x: &[u64], mut n: u64) -> Elem {
        let mut acc = self.identity();
        let mut base = x.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_p(&self, x: &[u64]) -> Elem {
        self.pow(x, self.p())
    }

    /// `x⁻¹ y⁻¹ x y`.
    fn commutator(&self, x: &[u64], y: &[u64]) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(&self.inv(&yx), &xy)
    }

    /// Degrees `ν ∈ [from, to)` of the value group.
    fn degrees(&self, from: Q, to: Q) -> Vec<Q> {
        let s = self.step();
        let mut nu = (from / s).ceil() * s;
        let mut out = Vec::new();
        while nu < to {
            out.push(nu);
            nu += s;
        }
        out
    }
}

/// The same group with `ω' = scale·ω + shift`.
pub struct Reweighted<G> {
    pub inner: G,
    pub scale: Q,
    pub shift: Q,
}

impl<G: FilteredGroup> Reweighted<G> {
    pub fn new(inner: G, scale: Q, shift: Q) -> Self {
        assert!(scale > Q::from_integer(0));
        Reweighted { inner, scale, shift }
    }

    fn back(&self, nu: Q) -> Q {
        (nu - self.shift) / self.scale
    }
}

impl<G: FilteredGroup> FilteredGroup for Reweighted<G> {
    fn describe(&self) -> String {
        format!("{} with omega' = {}*omega + {}", self.inner.describe(), self.scale, self.shift)
    }
    fn p(&self) -> u64 {
        self.inner.p()
    }
    fn ramification(&self) -> u32 {
        let s = self.inner.step() * self.scale;
        *s.denom() as u32
    }
    fn step(&self) -> Q {
        self.inner.step() * self.scale
    }
    fn omega(&self, x: &[u64]) -> Val {
        self.inner.omega(x).scale(self.scale).shift(self.shift)
    }
    fn min_valuation(&self) -> Q {
        self.inner.min_valuation() * self.scale + self.shift
    }
    fn precision(&self) -> Q {
        self.inner.precision() * self.scale + self.shift
    }
    fn reduce_level(&self, x: &[u64], level: Q) -> Elem {
        self.inner.reduce_level(x, self.back(level))
    }
    fn leading(&self, x: &[u64], nu: Q) -> Vec<u64> {
        self.inner.leading(x, self.back(nu))
    }
    fn degree_generators(&self, nu: Q) -> Vec<Elem> {
        self.inner.degree_generators(self.back(nu))
    }
    fn degrees(&self, from: Q, to: Q) -> Vec<Q> {
        self.inner
            .degrees(self.back(from), self.back(to))
            .into_iter()
            .map(|v| v * self.scale + self.shift)
            .collect()
    }
    fn identity(&self) -> Elem {
        self.inner.identity()
    }
    fn mul(&self, x: &[u64], y: &[u64]) -> Elem {
        self.inner.mul(x, y)
    }
    fn inv(&self, x: &[u64]) -> Elem {
        self.inner.inv(x)
    }
    fn contains(&self, x: &[u64]) -> bool {
        self.inner.contains(x)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> Elem {
        self.inner.random_element(rng)
    }
    fn pth_root(&self, x: &[u64]) -> Result<Option<Elem>> {
        self.inner.pth_root(x)
    }
    fn complete_by_construction(&self) -> bool {
        self.inner.complete_by_construction()
    }
}

impl<G: FilteredGroup + ?Sized> FilteredGroup for &G {
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn p(&self) -> u64 {
        (**self).p()
    }
    fn ramification(&self) -> u32 {
        (**self).ramification()
    }
    fn step(&self) -> Q {
        (**self).step()
    }
    fn omega(&self, x: &[u64]) -> Val {
        (**self).omega(x)
    }
    fn min_valuation(&self) -> Q {
        (**self).min_valuation()
    }
    fn precision(&self) -> Q {
        (**self).precision()
    }
    fn reduce_level(&self, x: &[u64], level: Q) -> Elem {
        (**self).reduce_level(x, level)
    }
    fn leading(&self, x: &[u64], nu: Q) -> Vec<u64> {
        (**self).leading(x, nu)
    }
    fn degree_generators(&self, nu: Q) -> Vec<Elem> {
        (**self).degree_generators(nu)
    }
    fn degrees(&self, from: Q, to: Q) -> Vec<Q> {
        (**self).degrees(from, to)
    }
    fn identity(&self) -> Elem {
        (**self).identity()
    }
    fn mul(&self, x: &[u64], y: &[u64]) -> Elem {
        (**self).mul(x, y)
    }
    fn inv(&self, x: &[u64]) -> Elem {
        (**self).inv(x)
    }
    fn contains(&self, x: &[u64]) -> bool {
        (**self).contains(x)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> Elem {
        (**self).random_element(rng)
    }
    fn pth_root(&self, x: &[u64]) -> Result<Option<Elem>> {
        (**self).pth_root(x)
    }
    fn complete_by_construction(&self) -> bool {
        (**self).complete_by_construction()
    }
}

/// Solves `y^p = x` degree by degree using the ε-maps `gr_{μ-1} → gr_μ`.
/// Works for any p-valued group; `None` if some residual degree has no preimage.
pub fn pth_root_by_lifting(g: &dyn FilteredGroup, x: &[u64]) -> Result<Option<Elem>> {
    use crate::padic::modint::Zpk;
    use crate::padic::snf::{snf_mod, ModMatrix};
    let p = g.p();
    let fp = Zpk::new(p, 1)?;
    let mut y = g.identity();
    loop {
        let r = g.mul(x, &g.inv(&g.pow_p(&y)));
        let mu = match g.omega(&r) {
            Val::Exact(mu) => mu,
            Val::AtLeast(_) => return Ok(Some(y)),
        };
        let below = mu - 1;
        if below < g.min_valuation() {
            return Ok(None);
        }
        let gens = g.degree_generators(below);
        let target = g.leading(&r, mu);
        // columns: leading vectors of gen^p at μ
        let cols: Vec<Vec<u64>> = gens.iter().map(|s| g.leading(&g.pow_p(s), mu)).collect();
        let mut m = ModMatrix::zeros(fp, target.len(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        let s = snf_mod(&m, true);
        let tr = s.transforms.as_ref().expect("transforms");
        // P m Q = D, so t = Q D^+ P b
        let pb = tr.p.mul_vec(&target);
        let rank = s.rank();
        if pb[rank..].iter().any(|&c| c != 0) {
            return Ok(None);
        }
        let mut w = vec![0u64; cols.len()];
        w[..rank].copy_from_slice(&pb[..rank]);
        let t = tr.q.mul_vec(&w);
        let mut c = g.identity();
        for (s, &k) in gens.iter().zip(&t) {
            if k != 0 {
                c = g.mul(&c, &g.pow(s, k));
            }
        }
        y = g.mul(&y, &c);
    }
}
