//! Formal group laws with integer coefficients, truncated at a total degree,
//! and the standard groups they define on `m^n`.

mod poly;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::filtered::{pth_root_by_lifting, Elem, FilteredGroup};
use crate::padic::{Algebra, Layout, RingSpec, Val, Q};

pub use poly::Poly;

/// `F(X, Y)`, an n-tuple of polynomials in `X_1..X_n, Y_1..Y_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw {
    pub ring: RingSpec,
    pub n: usize,
    pub max_degree: u32,
    pub comps: Vec<Poly>,
}

impl FormalGroupLaw {
    pub fn new(ring: RingSpec, n: usize, max_degree: u32, comps: Vec<Poly>) -> Result<Self> {
        if comps.len() != n || comps.iter().any(|c| c.nvars != 2 * n) {
            return Err(Error::InvalidInput("a formal group law needs n polynomials in 2n variables".into()));
        }
        let comps = comps
            .into_iter()
            .map(|c| {
                let mut t = Poly::zero(2 * n, max_degree);
                for (e, v) in c.terms {
                    t.add_term(e, v);
                }
                t
            })
            .collect();
        let f = FormalGroupLaw { ring, n, max_degree, comps };
        f.validate()?;
        Ok(f)
    }

    /// Default truncation `max(p, N·e)`.
    pub fn default_degree(ring: &RingSpec) -> u32 {
        (ring.p as u32).max(ring.precision_n * ring.e)
    }

    pub fn additive(ring: RingSpec, n: usize, max_degree: u32) -> Result<Self> {
        let comps = (0..n).map(|i| Poly::var(2 * n, max_degree, i).add(&Poly::var(2 * n, max_degree, n + i))).collect();
        FormalGroupLaw::new(ring, n, max_degree, comps)
    }

    /// `X + Y + XY`, i.e. `(1+X)(1+Y) - 1`.
    pub fn multiplicative(ring: RingSpec, max_degree: u32) -> Result<Self> {
        let x = Poly::var(2, max_degree, 0);
        let y = Poly::var(2, max_degree, 1);
        FormalGroupLaw::new(ring, 1, max_degree, vec![x.add(&y).add(&x.mul(&y))])
    }

    /// The two-dimensional unipotent law `(X1 + Y1, X2 + Y2 + X1 Y1)`.
    pub fn unipotent2(ring: RingSpec, max_degree: u32) -> Result<Self> {
        let v = |i| Poly::var(4, max_degree, i);
        let f1 = v(0).add(&v(2));
        let f2 = v(1).add(&v(3)).add(&v(0).mul(&v(2)));
        FormalGroupLaw::new(ring, 2, max_degree, vec![f1, f2])
    }

    /// Identity axioms and associativity up to the truncation degree.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let d = self.max_degree;
        let xs: Vec<Poly> = (0..n).map(|i| Poly::var(n, d, i)).collect();
        let zeros: Vec<Poly> = (0..n).map(|_| Poly::zero(n, d)).collect();
        for (i, f) in self.comps.iter().enumerate() {
            let left: Vec<Poly> = xs.iter().chain(&zeros).cloned().collect();
            let right: Vec<Poly> = zeros.iter().chain(&xs).cloned().collect();
            if f.compose(&left) != xs[i] || f.compose(&right) != xs[i] {
                return Err(Error::InvalidInput(format!("component {i} violates F(X,0) = X = F(0,X)")));
            }
        }
        let v3 = |i| Poly::var(3 * n, d, i);
        let x: Vec<Poly> = (0..n).map(v3).collect();
        let y: Vec<Poly> = (n..2 * n).map(v3).collect();
        let z: Vec<Poly> = (2 * n..3 * n).map(v3).collect();
        let fxy = self.apply(&x, &y);
        let fyz = self.apply(&y, &z);
        if self.apply(&fxy, &z) != self.apply(&x, &fyz) {
            return Err(Error::InvalidInput("law is not associative up to the truncation degree".into()));
        }
        Ok(())
    }

    /// `F(a, b)` for polynomial arguments.
    pub fn apply(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let subs: Vec<Poly> = a.iter().chain(b).cloned().collect();
        self.comps.iter().map(|f| f.compose(&subs)).collect()
    }

    /// The inverse series `ι` with `F(X, ι(X)) = 0`.
    pub fn inverse_series(&self) -> Vec<Poly> {
        let n = self.n;
        let d = self.max_degree;
        let x: Vec<Poly> = (0..n).map(|i| Poly::var(n, d, i)).collect();
        let mut y: Vec<Poly> = x.iter().map(|p| p.neg()).collect();
        for _ in 0..d {
            let f = self.apply(&x, &y);
            y = y.iter().zip(&f).map(|(a, b)| a.sub(b)).collect();
        }
        y
    }

    /// `[m](X)`: the m-fold sum under F.
    pub fn multiple(&self, m: u64) -> Vec<Poly> {
        let n = self.n;
        let d = self.max_degree;
        let x: Vec<Poly> = (0..n).map(|i| Poly::var(n, d, i)).collect();
        let mut acc: Vec<Poly> = (0..n).map(|_| Poly::zero(n, d)).collect();
        for _ in 0..m {
            acc = self.apply(&acc, &x);
        }
        acc
    }
}

/// `f_p = p(X + φ) + ψ` with `ord φ >= 2`, `ord ψ >= p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PPowerDecomposition {
    pub f_p: Vec<Poly>,
    pub phi: Vec<Poly>,
    pub psi: Vec<Poly>,
}

/// Splits every coefficient `c = p·a + b` with `0 <= b < p`.
pub fn p_power_decomposition(f: &FormalGroupLaw) -> Result<PPowerDecomposition> {
    let p = f.ring.p;
    if (f.max_degree as u64) < p {
        return Err(Error::Truncation { degree: f.max_degree as usize, what: "p-power decomposition needs D >= p".into() });
    }
    let n = f.n;
    let d = f.max_degree;
    let fp = f.multiple(p);
    let pb = BigInt::from(p);
    let mut phi = Vec::with_capacity(n);
    let mut psi = Vec::with_capacity(n);
    for (i, comp) in fp.iter().enumerate() {
        let mut a_part = Poly::zero(n, d);
        let mut b_part = Poly::zero(n, d);
        for (e, c) in &comp.terms {
            let (a, b) = c.div_mod_floor(&pb);
            a_part.add_term(e.clone(), a);
            b_part.add_term(e.clone(), b);
        }
        let ph = a_part.sub(&Poly::var(n, d, i));
        if ph.order().is_some_and(|o| o < 2) {
            return Err(Error::OrderBound(format!("component {i}: ord(phi) < 2")));
        }
        if b_part.order().is_some_and(|o| (o as u64) < p) {
            return Err(Error::OrderBound(format!("component {i}: ord(psi) < p")));
        }
        phi.push(ph);
        psi.push(b_part);
    }
    Ok(PPowerDecomposition { f_p: fp, phi, psi })
}

/// The group `{x ∈ m^n : ω(x) >= level}` with ω = min coordinate valuation.
pub struct StandardGroup {
    law: FormalGroupLaw,
    scalars: Arc<Algebra>,
    layout: Layout,
    coeffs: Vec<Vec<(Vec<u32>, u64)>>,
    inverse: Vec<Vec<(Vec<u32>, u64)>>,
    level: Q,
}

fn reduce_terms(p: &Poly, alg: &Algebra) -> Vec<(Vec<u32>, u64)> {
    let m = BigInt::from(alg.zpk().modulus());
    p.terms
        .iter()
        .map(|(e, c)| (e.clone(), c.mod_floor(&m).to_u64().expect("reduced")))
        .filter(|t| t.1 != 0)
        .collect()
}

impl StandardGroup {
    /// `level` is `r/e` for the subgroup `G_{r/e}`.
    pub fn new(law: FormalGroupLaw, level: Q) -> Result<Self> {
        let ring = law.ring.clone().normalized()?;
        let e = ring.e as i64;
        if level <= Q::from_integer(0) || !(level * e).is_integer() {
            return Err(Error::InvalidInput(format!("level {level} is not a positive multiple of 1/{e}")));
        }
        let scalars = Algebra::matrix(&ring, 1)?;
        let m = ring.digits();
        if level * (law.max_degree as i64 + 1) < Q::from_integer(m as i64) {
            return Err(Error::Truncation {
                degree: law.max_degree as usize,
                what: format!("terms of degree > D have valuation below the working precision {m}"),
            });
        }
        let offsets: Vec<Q> = (0..law.n).flat_map(|_| scalars.offsets().to_vec()).collect();
        let layout = Layout::new(scalars.zpk(), offsets);
        let coeffs = law.comps.iter().map(|c| reduce_terms(c, &scalars)).collect();
        let inverse = law.inverse_series().iter().map(|c| reduce_terms(c, &scalars)).collect();
        Ok(StandardGroup { law, scalars, layout, coeffs, inverse, level })
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn level(&self) -> Q {
        self.level
    }

    pub fn equi_p_valued(&self) -> bool {
        self.law.ring.e == 1
    }

    fn coord(&self, x: &[u64], i: usize) -> Vec<u64> {
        let e = self.scalars.dim();
        x[i * e..(i + 1) * e].to_vec()
    }

    fn eval(&self, polys: &[Vec<(Vec<u32>, u64)>], args: &[Vec<u64>]) -> Elem {
        let a = &self.scalars;
        let maxdeg = self.law.max_degree as usize;
        let mut powers: Vec<Vec<Vec<u64>>> = args.iter().map(|v| vec![a.one(), v.clone()]).collect();
        let mut out = Vec::with_capacity(self.layout.dim());
        for terms in polys {
            let mut acc = a.zero();
            for (exps, c) in terms {
                let mut m = a.scale(*c, &a.one());
                for (i, &k) in exps.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    while powers[i].len() <= k as usize && powers[i].len() <= maxdeg {
                        let next = a.mul(powers[i].last().unwrap(), &args[i]);
                        powers[i].push(next);
                    }
                    m = a.mul(&m, &powers[i][k as usize]);
                }
                acc = a.add(&acc, &m);
            }
            out.extend(acc);
        }
        out
    }
}

impl FilteredGroup for StandardGroup {
    fn describe(&self) -> String {
        format!(
            "standard group of a {}-dimensional formal group law over p={}, e={} at level {}",
            self.law.n, self.law.ring.p, self.law.ring.e, self.level
        )
    }

    fn p(&self) -> u64 {
        self.law.ring.p
    }

    fn ramification(&self) -> u32 {
        self.law.ring.e
    }

    fn omega(&self, x: &[u64]) -> Val {
        self.layout.val(x)
    }

    fn min_valuation(&self) -> Q {
        self.level
    }

    fn precision(&self) -> Q {
        self.layout.precision_bound()
    }

    fn reduce_level(&self, x: &[u64], level: Q) -> Elem {
        self.layout.reduce_level(x, level)
    }

    fn leading(&self, x: &[u64], nu: Q) -> Vec<u64> {
        if nu < self.level {
            return Vec::new();
        }
        self.layout.leading(x, nu)
    }

    fn degree_generators(&self, nu: Q) -> Vec<Elem> {
        if nu < self.level {
            return Vec::new();
        }
        let z = self.layout.zpk();
        self.layout
            .slots_at(nu)
            .into_iter()
            .map(|(i, j)| {
                let mut x = vec![0u64; self.layout.dim()];
                x[i] = z.p_pow(j);
                x
            })
            .collect()
    }

    fn identity(&self) -> Elem {
        vec![0; self.layout.dim()]
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Elem {
        let n = self.law.n;
        let args: Vec<Vec<u64>> = (0..n).map(|i| self.coord(x, i)).chain((0..n).map(|i| self.coord(y, i))).collect();
        self.eval(&self.coeffs, &args)
    }

    fn inv(&self, x: &[u64]) -> Elem {
        let args: Vec<Vec<u64>> = (0..self.law.n).map(|i| self.coord(x, i)).collect();
        self.eval(&self.inverse, &args)
    }

    fn contains(&self, x: &[u64]) -> bool {
        self.layout.val(x).ge(self.level) == Some(true)
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Elem {
        let z = self.layout.zpk();
        let extra = if rng.next_u32().is_multiple_of(3) { 1 } else { 0 };
        (0..self.layout.dim())
            .map(|i| {
                let j = self.layout.digits_below(i, self.level) + extra;
                z.mul(z.reduce_u64(rng.next_u64()), z.p_pow(j))
            })
            .collect()
    }

    fn pth_root(&self, x: &[u64]) -> Result<Option<Elem>> {
        match pth_root_by_lifting(self, x)? {
            Some(y) if self.contains(&y) => Ok(Some(y)),
            _ => Ok(None),
        }
    }
}

/// `H = G_{ρ/e}`, the part of the standard group where `ω > 1/(p-1)`; checks
/// `ω(x^p) = ω(x) + 1` on samples.
pub fn saturation_subgroup(law: FormalGroupLaw, samples: usize, seed: u64) -> Result<StandardGroup> {
    let ring = law.ring.clone().normalized()?;
    let level = Q::new(ring.rho() as i64, ring.e as i64);
    let h = StandardGroup::new(law, level)?;
    let r = crate::filtered::check_filtration(&h, samples, seed);
    let s = &r.axioms[&crate::filtered::AxiomId::PowerShift];
    if s.witness.is_some() {
        return Err(Error::Inconsistent(format!("ω(x^p) = ω(x)+1 fails at {:?}", s.witness)));
    }
    Ok(h)
}

/// Reads the FGL text format:
///
/// ```text
/// p: 3
/// e: 1
/// eisenstein_poly: -3 1
/// n_vars: 1
/// D: 6
/// precision_N: 6
/// # component, exponents of X_1..X_n Y_1..Y_n, coefficient
/// 0 1 0 1
/// 0 0 1 1
/// 0 1 1 1
/// ```
pub fn parse_fgl(text: &str) -> Result<FormalGroupLaw> {
    let mut p = None;
    let mut e = 1u32;
    let mut poly: Vec<i64> = Vec::new();
    let mut n = None;
    let mut d = None;
    let mut prec = None;
    let mut terms: Vec<(usize, Vec<u32>, BigInt)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: ln + 1, msg };
        if let Some((k, v)) = line.split_once(':') {
            let v = v.trim();
            let num = |s: &str| s.parse::<u64>().map_err(|_| perr(format!("bad number {s:?}")));
            match k.trim() {
                "p" => p = Some(num(v)?),
                "e" => e = num(v)? as u32,
                "eisenstein_poly" => {
                    poly = v
                        .split_whitespace()
                        .map(|t| t.parse::<i64>().map_err(|_| perr(format!("bad coefficient {t:?}"))))
                        .collect::<Result<_>>()?
                }
                "n_vars" => n = Some(num(v)? as usize),
                "D" => d = Some(num(v)? as u32),
                "precision_N" => prec = Some(num(v)? as u32),
                other => return Err(perr(format!("unknown header {other:?}"))),
            }
            continue;
        }
        let nv = n.ok_or_else(|| perr("n_vars must precede the terms".into()))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 * nv + 2 {
            return Err(perr(format!("expected {} fields, got {}", 2 * nv + 2, toks.len())));
        }
        let comp: usize = toks[0].parse().map_err(|_| perr("bad component".into()))?;
        let exps: Vec<u32> =
            toks[1..=2 * nv].iter().map(|t| t.parse().map_err(|_| perr(format!("bad exponent {t:?}")))).collect::<Result<_>>()?;
        let c: BigInt = toks[2 * nv + 1].parse().map_err(|_| perr("bad coefficient".into()))?;
        if comp >= nv {
            return Err(perr(format!("component {comp} out of range")));
        }
        terms.push((comp, exps, c));
    }
    let p = p.ok_or_else(|| Error::Parse { line: 0, msg: "missing p".into() })?;
    let n = n.ok_or_else(|| Error::Parse { line: 0, msg: "missing n_vars".into() })?;
    let prec = prec.unwrap_or(6);
    let ring = RingSpec { p, e, eisenstein_poly: poly, precision_n: prec }.normalized()?;
    let d = d.unwrap_or_else(|| FormalGroupLaw::default_degree(&ring));
    let mut comps = vec![Poly::zero(2 * n, d); n];
    for (comp, exps, c) in terms {
        comps[comp].add_term(exps, c);
    }
    FormalGroupLaw::new(ring, n, d, comps)
}

/// Writes the format read by `parse_fgl`.
pub fn write_fgl(f: &FormalGroupLaw) -> String {
    let mut s = format!(
        "p: {}\ne: {}\neisenstein_poly: {}\nn_vars: {}\nD: {}\nprecision_N: {}\n",
        f.ring.p,
        f.ring.e,
        f.ring.eisenstein_poly.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
        f.n,
        f.max_degree,
        f.ring.precision_n
    );
    for (i, c) in f.comps.iter().enumerate() {
        for (e, v) in &c.terms {
            let ex: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{i} {} {v}\n", ex.join(" ")));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::qi;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn multiplicative_square_of_pi() {
        let ring = RingSpec::pure(3, 2, 8).unwrap();
        let f = FormalGroupLaw::multiplicative(ring, 8).unwrap();
        let g = StandardGroup::new(f, Q::new(1, 2)).unwrap();
        // coordinates (a, b) mean a + bπ; π·π under F is 2π + π² = 3 + 2π
        assert_eq!(g.mul(&[0, 1], &[0, 1]), vec![3, 2]);
    }

    #[test]
    fn decomposition_of_multiplicative_law() {
        let ring = RingSpec::unramified(3, 6).unwrap();
        let f = FormalGroupLaw::multiplicative(ring, 6).unwrap();
        let d = p_power_decomposition(&f).unwrap();
        // (1+X)^3 - 1 = 3X + 3X^2 + X^3
        let mut expect = Poly::zero(1, 6);
        expect.add_term(vec![1], big(3));
        expect.add_term(vec![2], big(3));
        expect.add_term(vec![3], big(1));
        assert_eq!(d.f_p[0], expect);
        let mut phi = Poly::zero(1, 6);
        phi.add_term(vec![2], big(1));
        assert_eq!(d.phi[0], phi);
        let mut psi = Poly::zero(1, 6);
        psi.add_term(vec![3], big(1));
        assert_eq!(d.psi[0], psi);
    }

    #[test]
    fn additive_decomposition_is_trivial() {
        let f = FormalGroupLaw::additive(RingSpec::unramified(5, 4).unwrap(), 2, 6).unwrap();
        let d = p_power_decomposition(&f).unwrap();
        assert!(d.phi.iter().all(Poly::is_zero) && d.psi.iter().all(Poly::is_zero));
    }

    #[test]
    fn saturation_levels() {
        let m = |p, e, n| FormalGroupLaw::multiplicative(RingSpec::pure(p, e, n).unwrap(), 12).unwrap();
        assert_eq!(saturation_subgroup(m(3, 1, 6), 20, 1).unwrap().level(), qi(1));
        let h = saturation_subgroup(m(5, 2, 8), 20, 1).unwrap();
        assert_eq!(h.level(), Q::new(1, 2));
        assert!(!h.equi_p_valued());
        assert_eq!(saturation_subgroup(m(3, 2, 10), 20, 1).unwrap().level(), qi(1));
    }

    #[test]
    fn text_format_round_trip() {
        let f = FormalGroupLaw::unipotent2(RingSpec::unramified(3, 5).unwrap(), 6).unwrap();
        let g = parse_fgl(&write_fgl(&f)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn truncation_too_small() {
        let f = FormalGroupLaw::multiplicative(RingSpec::unramified(3, 10).unwrap(), 3).unwrap();
        assert!(matches!(StandardGroup::new(f, qi(1)), Err(Error::Truncation { .. })));
    }
}
