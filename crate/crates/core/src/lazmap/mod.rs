//! Polynomial cochains on a group chart and the map Φ to Lie cochains:
//! take the multilinear part and antisymmetrize.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal_groups::Poly;
use crate::lazard_lie::LieLattice;
use crate::lie_cohom::{insertion_sign, masks_of_size};
use crate::padic::Zpk;

pub type RPoly = Poly<BigRational>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponential coordinates `X = Σ X_i δ_i` with the group law given by the
/// Baker–Campbell–Hausdorff series through degree 4.
#[derive(Clone, Debug)]
pub struct Chart {
    pub lattice: LieLattice,
    pub degree: u32,
    mu: Vec<RPoly>,
}

impl Chart {
    pub fn new(lattice: &LieLattice, degree: u32) -> Result<Self> {
        if lattice.modulus.is_some() {
            return Err(Error::InvalidInput("the chart needs exact integer structure constants".into()));
        }
        if degree > 4 {
            return Err(Error::Truncation { degree: degree as usize, what: "BCH is implemented through degree 4".into() });
        }
        let d = lattice.d;
        let mut chart = Chart { lattice: lattice.clone(), degree, mu: Vec::new() };
        let x: Vec<RPoly> = (0..d).map(|i| RPoly::var(2 * d, degree, i)).collect();
        let y: Vec<RPoly> = (0..d).map(|i| RPoly::var(2 * d, degree, d + i)).collect();
        let b1 = chart.bracket(&x, &y);
        let b2 = chart.bracket(&x, &b1);
        let b3 = chart.bracket(&y, &b1);
        let b4 = chart.bracket(&y, &b2);
        chart.mu = (0..d)
            .map(|i| {
                x[i].add(&y[i])
                    .add(&b1[i].scale(&rat(1, 2)))
                    .add(&b2[i].scale(&rat(1, 12)))
                    .sub(&b3[i].scale(&rat(1, 12)))
                    .sub(&b4[i].scale(&rat(1, 24)))
            })
            .collect();
        Ok(chart)
    }

    pub fn dim(&self) -> usize {
        self.lattice.d
    }

    /// Coordinatewise `[u, v]` of two vectors of polynomials.
    pub fn bracket(&self, u: &[RPoly], v: &[RPoly]) -> Vec<RPoly> {
        let d = self.lattice.d;
        let (nv, deg) = (u[0].nvars, u[0].max_degree);
        let mut out = vec![RPoly::zero(nv, deg); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if i == j || v[j].is_zero() {
                    continue;
                }
                let prod = u[i].mul(&v[j]);
                if prod.is_zero() {
                    continue;
                }
                for (k, &c) in self.lattice.bracket(i, j).iter().enumerate() {
                    if c != 0 {
                        out[k] = out[k].add(&prod.scale(&BigRational::from_integer(c.into())));
                    }
                }
            }
        }
        out
    }

    /// The group law `μ(X, Y)` in `2d` variables.
    pub fn product(&self) -> &[RPoly] {
        &self.mu
    }

    /// `μ(x_a, x_b)` with arguments taken from blocks a and b of `nblocks`.
    fn product_of_blocks(&self, nblocks: usize, a: usize, b: usize) -> Vec<RPoly> {
        let d = self.dim();
        let subs: Vec<RPoly> = (0..d)
            .map(|i| RPoly::var(nblocks * d, self.degree, a * d + i))
            .chain((0..d).map(|i| RPoly::var(nblocks * d, self.degree, b * d + i)))
            .collect();
        self.mu.iter().map(|m| m.compose(&subs)).collect()
    }
}

/// `f(x_1..x_n)` as a polynomial in `n·d` chart coordinates, vanishing when
/// any argument is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticCochain {
    pub arity: usize,
    pub d: usize,
    pub poly: RPoly,
}

impl AnalyticCochain {
    pub fn new(arity: usize, d: usize, poly: RPoly) -> Result<Self> {
        if poly.nvars != arity * d {
            return Err(Error::InvalidInput(format!("expected {} variables, got {}", arity * d, poly.nvars)));
        }
        for e in poly.terms.keys() {
            if (0..arity).any(|b| e[b * d..(b + 1) * d].iter().all(|&x| x == 0)) {
                return Err(Error::InvalidInput(format!("monomial {e:?} does not vanish at the identity")));
            }
        }
        Ok(AnalyticCochain { arity, d, poly })
    }

    pub fn zero(arity: usize, d: usize, degree: u32) -> Self {
        AnalyticCochain { arity, d, poly: RPoly::zero(arity * d, degree) }
    }

    /// A few random monomials with small integer coefficients; each argument
    /// block gets total degree between 1 and `max_deg`.
    pub fn random(rng: &mut impl Rng, arity: usize, d: usize, max_deg: u32, degree: u32) -> Self {
        let mut poly = RPoly::zero(arity * d, degree);
        let nterms = rng.gen_range(1..=5);
        for _ in 0..nterms {
            let mut e = vec![0u32; arity * d];
            for b in 0..arity {
                let k = rng.gen_range(1..=max_deg);
                for _ in 0..k {
                    e[b * d + rng.gen_range(0..d)] += 1;
                }
            }
            let c = loop {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            poly.add_term(e, BigRational::from_integer(c.into()));
        }
        AnalyticCochain { arity, d, poly }
    }

    /// `f ∪ g (x_1..x_{p+q}) = f(x_1..x_p) g(x_{p+1}..x_{p+q})`.
    pub fn cup(&self, other: &AnalyticCochain) -> AnalyticCochain {
        let d = self.d;
        let n = self.arity + other.arity;
        let deg = self.poly.max_degree.max(other.poly.max_degree);
        let lift = |f: &AnalyticCochain, shift: usize| {
            let mut out = RPoly::zero(n * d, deg);
            for (e, c) in &f.poly.terms {
                let mut full = vec![0u32; n * d];
                full[shift * d..shift * d + e.len()].copy_from_slice(e);
                out.add_term(full, c.clone());
            }
            out
        };
        AnalyticCochain { arity: n, d, poly: lift(self, 0).mul(&lift(other, self.arity)) }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("arity {}\nvars {}\ndegree {}\n", self.arity, self.d, self.poly.max_degree);
        for (e, c) in &self.poly.terms {
            let es: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{} {c}\n", es.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (mut arity, mut d, mut degree) = (None, None, None);
        let mut terms = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line: ln + 1, msg: msg.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: Option<&&str>| t.and_then(|t| t.parse::<usize>().ok());
            match toks[0] {
                "arity" => arity = Some(num(toks.get(1)).ok_or_else(|| perr("bad arity"))?),
                "vars" => d = Some(num(toks.get(1)).ok_or_else(|| perr("bad variable count"))?),
                "degree" => degree = Some(num(toks.get(1)).ok_or_else(|| perr("bad degree"))? as u32),
                _ => {
                    let (last, exps) = toks.split_last().expect("nonempty line");
                    let e: Vec<u32> = exps.iter().map(|t| t.parse().map_err(|_| perr("bad exponent"))).collect::<Result<_>>()?;
                    let c: BigRational = last.parse().map_err(|_| perr("bad coefficient"))?;
                    terms.push((ln + 1, e, c));
                }
            }
        }
        let missing = |w: &str| Error::Parse { line: 0, msg: format!("missing `{w}`") };
        let (arity, d) = (arity.ok_or_else(|| missing("arity"))?, d.ok_or_else(|| missing("vars"))?);
        let degree = degree.unwrap_or_else(|| terms.iter().map(|t| t.1.iter().sum::<u32>()).max().unwrap_or(1).max(arity as u32 + 1));
        let mut poly = RPoly::zero(arity * d, degree);
        for (line, e, c) in terms {
            if e.len() != arity * d {
                return Err(Error::Parse { line, msg: format!("expected {} exponents", arity * d) });
            }
            poly.add_term(e, c);
        }
        AnalyticCochain::new(arity, d, poly)
    }
}

/// The inhomogeneous bar differential with trivial coefficients:
/// `(df)(x_0..x_n) = f(x_1..x_n) + Σ (−1)^i f(.., x_{i−1}x_i, ..) + (−1)^{n+1} f(x_0..x_{n−1})`.
pub fn bar_differential_analytic(f: &AnalyticCochain, chart: &Chart) -> Result<AnalyticCochain> {
    let d = chart.dim();
    if f.d != d {
        return Err(Error::InvalidInput("cochain and chart dimensions differ".into()));
    }
    if f.poly.max_degree > chart.degree {
        return Err(Error::Truncation { degree: f.poly.max_degree as usize, what: "cochain degree exceeds the chart truncation".into() });
    }
    let n = f.arity;
    let nb = n + 1;
    let deg = chart.degree;
    let block = |b: usize| -> Vec<RPoly> { (0..d).map(|i| RPoly::var(nb * d, deg, b * d + i)).collect() };
    let compose_blocks = |blocks: Vec<Vec<RPoly>>| -> RPoly {
        let subs: Vec<RPoly> = blocks.into_iter().flatten().collect();
        let mut g = f.poly.clone();
        g.max_degree = deg;
        g.compose(&subs)
    };
    let mut out = compose_blocks((1..nb).map(block).collect());
    for i in 1..=n {
        let mut blocks: Vec<Vec<RPoly>> = (0..i - 1).map(block).collect();
        blocks.push(chart.product_of_blocks(nb, i - 1, i));
        blocks.extend((i + 1..nb).map(block));
        let t = compose_blocks(blocks);
        out = if i % 2 == 1 { out.sub(&t) } else { out.add(&t) };
    }
    let last = compose_blocks((0..n).map(block).collect());
    out = if (n + 1) % 2 == 1 { out.sub(&last) } else { out.add(&last) };
    Ok(AnalyticCochain { arity: nb, d, poly: out })
}

/// An alternating n-form, one rational coefficient per increasing multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCochain {
    pub degree: usize,
    pub d: usize,
    pub coeffs: Vec<BigRational>,
}

impl LieCochain {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `(increasing index set, coefficient)` for every nonzero coefficient.
    pub fn terms(&self) -> Vec<(Vec<usize>, BigRational)> {
        masks_of_size(self.d, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| ((0..self.d).filter(|&b| m >> b & 1 == 1).collect(), c.clone()))
            .collect()
    }

    pub fn coeff(&self, mask: u32) -> BigRational {
        let masks = masks_of_size(self.d, self.degree);
        masks.iter().position(|&m| m == mask).map_or_else(BigRational::zero, |i| self.coeffs[i].clone())
    }

    /// Coordinates in `Z/p^k`; fails if a denominator is divisible by p.
    pub fn reduce(&self, ring: Zpk) -> Result<Vec<u64>> {
        let m = BigInt::from(ring.modulus());
        self.coeffs
            .iter()
            .map(|c| {
                let den = c.denom().mod_floor_pos(&m);
                let num = c.numer().mod_floor_pos(&m);
                let inv = ring
                    .inv(u64::try_from(&den).expect("reduced"))
                    .ok_or_else(|| Error::InvalidInput(format!("coefficient {c} is not {}-integral", ring.p())))?;
                Ok(ring.mul(u64::try_from(&num).expect("reduced"), inv))
            })
            .collect()
    }

    /// `f_S ∧ f_T = ±f_{S∪T}`, the sign counting pairs `s > t`.
    pub fn wedge(&self, other: &LieCochain) -> LieCochain {
        let d = self.d;
        let q = self.degree + other.degree;
        let masks = masks_of_size(d, q);
        let mut coeffs = vec![BigRational::zero(); masks.len()];
        if q <= d {
            for (s, a) in masks_of_size(d, self.degree).into_iter().zip(&self.coeffs) {
                if a.is_zero() {
                    continue;
                }
                for (t, b) in masks_of_size(d, other.degree).into_iter().zip(&other.coeffs) {
                    if b.is_zero() || s & t != 0 {
                        continue;
                    }
                    let inv: u32 = (0..d).filter(|&y| t >> y & 1 == 1).map(|y| (s >> y).count_ones() - (s >> y & 1)).sum();
                    let i = masks.iter().position(|&m| m == s | t).expect("mask of size q");
                    let v = a * b;
                    coeffs[i] = if inv % 2 == 1 { &coeffs[i] - v } else { &coeffs[i] + v };
                }
            }
        }
        LieCochain { degree: q, d, coeffs }
    }
}

trait ModFloorPos {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt;
}

impl ModFloorPos for BigInt {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// `Φ(f)(δ_J) = Σ_σ sgn(σ) T(δ_{j_σ(1)}, …, δ_{j_σ(n)})` where `T` is the
/// multilinear part of f: one linear variable from each argument block.
pub fn lazard_phi(f: &AnalyticCochain) -> LieCochain {
    let (n, d) = (f.arity, f.d);
    let masks = masks_of_size(d, n);
    let perms = permutations(n);
    let coeffs = masks
        .iter()
        .map(|&mask| {
            let idx: Vec<usize> = (0..d).filter(|&b| mask >> b & 1 == 1).collect();
            let mut acc = BigRational::zero();
            for (perm, odd) in &perms {
                let mut e = vec![0u32; n * d];
                for (b, &pi) in perm.iter().enumerate() {
                    e[b * d + idx[pi]] = 1;
                }
                let c = f.poly.coeff(&e);
                acc = if *odd { acc - c } else { acc + c };
            }
            acc
        })
        .collect();
    LieCochain { degree: n, d, coeffs }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // moving n-1 from the end to `pos` is (len - pos) transpositions
            out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// `(dω)(e_S) = Σ_{a<b} (−1)^{a+b} ω([e_{s_a}, e_{s_b}], …)`, trivial coefficients.
pub fn ce_differential(lattice: &LieLattice, w: &LieCochain) -> LieCochain {
    let d = lattice.d;
    let q = w.degree;
    let out_masks = masks_of_size(d, q + 1);
    let in_masks = masks_of_size(d, q);
    let pos = |m: u32| in_masks.iter().position(|&x| x == m).expect("mask of size q");
    let coeffs = out_masks
        .iter()
        .map(|&s| {
            let elems: Vec<usize> = (0..d).filter(|&b| s >> b & 1 == 1).collect();
            let mut acc = BigRational::zero();
            for (a, &sa) in elems.iter().enumerate() {
                for (b, &sb) in elems.iter().enumerate().skip(a + 1) {
                    let rest = s & !(1 << sa) & !(1 << sb);
                    for k in 0..d {
                        let c = lattice.get(sa, sb, k);
                        if c == 0 || rest >> k & 1 == 1 {
                            continue;
                        }
                        let neg = ((a + b) % 2 == 1) ^ insertion_sign(rest, k);
                        let v = BigRational::from_integer(c.into()) * &w.coeffs[pos(rest | 1 << k)];
                        acc = if neg { acc - v } else { acc + v };
                    }
                }
            }
            acc
        })
        .collect();
    LieCochain { degree: q + 1, d, coeffs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMapVerdict {
    pub lattice: String,
    pub seed: u64,
    pub samples: usize,
    pub failures: Vec<String>,
    pub holds: bool,
}

/// `Φ(d_bar f) = d_CE Φ(f)` on random cochains of arity 1 and 2.
pub fn chain_map_check(chart: &Chart, samples: usize, seed: u64) -> Result<ChainMapVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = chart.dim();
    let mut failures = Vec::new();
    for s in 0..samples {
        let arity = 1 + s % 2;
        let max_deg = if arity == 1 { 3 } else { 2 };
        let f = AnalyticCochain::random(&mut rng, arity, d, max_deg, chart.degree);
        let lhs = lazard_phi(&bar_differential_analytic(&f, chart)?);
        let rhs = ce_differential(&chart.lattice, &lazard_phi(&f));
        if lhs != rhs {
            failures.push(format!("sample {s}: f = {:?}, Φ(df) = {:?}, dΦ(f) = {:?}", f.poly.terms, lhs.coeffs, rhs.coeffs));
        }
    }
    Ok(ChainMapVerdict { lattice: chart.lattice.provenance.clone(), seed, samples, holds: failures.is_empty(), failures })
}

/// `x_1 · y_2`: the product of the first coordinate of the first argument
/// with the second coordinate of the second.
pub fn heisenberg_cocycle(degree: u32) -> AnalyticCochain {
    let mut poly = RPoly::zero(6, degree);
    poly.add_term(vec![1, 0, 0, 0, 1, 0], BigRational::one());
    AnalyticCochain { arity: 2, d: 3, poly }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lazard_lie::lattice;

    #[test]
    fn linear_coordinate_maps_to_dual_vector() {
        let mut poly = RPoly::zero(3, 4);
        poly.add_term(vec![0, 1, 0], BigRational::one());
        let f = AnalyticCochain::new(1, 3, poly).unwrap();
        let phi = lazard_phi(&f);
        assert_eq!(phi.coeff(0b010), BigRational::one());
        assert_eq!(phi.coeffs.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn heisenberg_cocycle_image() {
        let chart = Chart::new(&lattice::heisenberg(3), 4).unwrap();
        let c = heisenberg_cocycle(4);
        assert!(bar_differential_analytic(&c, &chart).unwrap().poly.is_zero());
        let phi = lazard_phi(&c);
        assert_eq!(phi.coeff(0b011), BigRational::one());
        assert!(ce_differential(&chart.lattice, &phi).is_zero());
    }

    #[test]
    fn chain_map_on_fixtures() {
        for l in [lattice::abelian(2), lattice::heisenberg(3), lattice::scaled_gl(3, 2)] {
            let chart = Chart::new(&l, 4).unwrap();
            let v = chain_map_check(&chart, 20, 7).unwrap();
            assert!(v.holds, "{:?}", v.failures.first());
        }
    }

    #[test]
    fn analytic_bar_squares_to_zero() {
        let chart = Chart::new(&lattice::scaled_gl(3, 2), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for arity in 1..=2 {
            let f = AnalyticCochain::random(&mut rng, arity, 4, 2, 4);
            let dd = bar_differential_analytic(&bar_differential_analytic(&f, &chart).unwrap(), &chart).unwrap();
            assert!(dd.poly.is_zero());
        }
    }

    #[test]
    fn phi_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = AnalyticCochain::random(&mut rng, 1, 3, 2, 4);
            let g = AnalyticCochain::random(&mut rng, 1, 3, 2, 4);
            assert_eq!(lazard_phi(&f.cup(&g)), lazard_phi(&f).wedge(&lazard_phi(&g)));
        }
    }

    #[test]
    fn cochain_text_round_trip() {
        let c = heisenberg_cocycle(4);
        assert_eq!(AnalyticCochain::parse(&c.to_text()).unwrap(), c);
        assert!(AnalyticCochain::parse("arity 2\nvars 1\n1 0 1\n").is_err());
    }
}
