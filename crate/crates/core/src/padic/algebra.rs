//! Free Z_p-algebras of finite rank given by integer structure constants,
//! truncated mod p^M. Each basis vector carries a valuation offset in [0,1),
//! so the valuation of `Σ c_i b_i` is `min v_p(c_i) + off_i`.

use std::sync::Arc;

use super::layout::Layout;
use super::modint::Zpk;
use super::ring::RingSpec;
use super::{qi, Val, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// `M_n(R)` on the basis `E_ij π^l`, index `(i*n + j)*e + l`.
    Matrix { n: usize, ring: RingSpec },
    /// The maximal order `Z_{p^2}[Π]` with `u² = c`, `Π² = p`, `Πu = -uΠ`.
    Quaternion { p: u64, c: i64 },
}

#[derive(Clone, Debug)]
pub struct Algebra {
    kind: AlgebraKind,
    zpk: Zpk,
    layout: Layout,
    /// `table[a*dim + b]` = coordinates of `b_a * b_b` as (index, coefficient).
    table: Vec<Vec<(usize, i64)>>,
    one: Vec<i64>,
    labels: Vec<String>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.zpk == other.zpk
    }
}

impl Algebra {
    pub fn matrix(ring: &RingSpec, n: usize) -> Result<Arc<Algebra>> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix size must be positive".into()));
        }
        let e = ring.e as usize;
        let dim = n * n * e;
        let idx = |i: usize, j: usize, l: usize| (i * n + j) * e + l;
        let pows: Vec<Vec<i128>> = (0..2 * e).map(|m| ring.pi_power(m)).collect();
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..e {
                    for k in 0..n {
                        for m in 0..e {
                            let a = idx(i, j, l);
                            let b = idx(j, k, m);
                            let entry = &mut table[a * dim + b];
                            for (t, &c) in pows[l + m].iter().enumerate() {
                                if c != 0 {
                                    let c = i64::try_from(c).map_err(|_| {
                                        Error::InvalidRing("Eisenstein coefficients too large".into())
                                    })?;
                                    entry.push((idx(i, k, t), c));
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut one = vec![0i64; dim];
        for i in 0..n {
            one[idx(i, i, 0)] = 1;
        }
        let offsets: Vec<Q> = (0..dim).map(|a| Q::new((a % e) as i64, e as i64)).collect();
        let mut labels = Vec::with_capacity(dim);
        for i in 0..n {
            for j in 0..n {
                for l in 0..e {
                    labels.push(match (n, e) {
                        (1, 1) => "1".to_string(),
                        (1, _) => format!("pi^{l}"),
                        (_, 1) => format!("E{}{}", i + 1, j + 1),
                        _ => format!("E{}{}*pi^{l}", i + 1, j + 1),
                    });
                }
            }
        }
        Ok(Arc::new(Algebra {
            kind: AlgebraKind::Matrix { n, ring: ring.clone() },
            zpk: ring.zpk(),
            layout: Layout::new(ring.zpk(), offsets),
            table,
            one,
            labels,
        }))
    }

    /// The quaternion order over Z_p with `c` a quadratic non-residue mod p.
    pub fn quaternion(p: u64, c: i64, digits: u32) -> Result<Arc<Algebra>> {
        let zpk = Zpk::new(p, digits)?;
        if p == 2 {
            return Err(Error::Unsupported("quaternion fixture needs odd p".into()));
        }
        let cr = zpk.reduce_i64(c) % p;
        if cr == 0 || Zpk::new(p, 1)?.pow(cr, (p - 1) / 2) == 1 {
            return Err(Error::InvalidInput(format!("{c} is not a non-residue mod {p}")));
        }
        let pp = p as i64;
        // basis 0 = 1, 1 = u, 2 = Π, 3 = uΠ
        let rules: [[Vec<(usize, i64)>; 4]; 4] = [
            [vec![(0, 1)], vec![(1, 1)], vec![(2, 1)], vec![(3, 1)]],
            [vec![(1, 1)], vec![(0, c)], vec![(3, 1)], vec![(2, c)]],
            [vec![(2, 1)], vec![(3, -1)], vec![(0, pp)], vec![(1, -pp)]],
            [vec![(3, 1)], vec![(2, -c)], vec![(1, pp)], vec![(0, -c * pp)]],
        ];
        let mut table = Vec::with_capacity(16);
        for row in rules.iter() {
            for cell in row.iter() {
                table.push(cell.clone());
            }
        }
        Ok(Arc::new(Algebra {
            kind: AlgebraKind::Quaternion { p, c },
            zpk,
            layout: Layout::new(zpk, vec![qi(0), qi(0), Q::new(1, 2), Q::new(1, 2)]),
            table,
            one: vec![1, 0, 0, 0],
            labels: vec!["1".into(), "u".into(), "Pi".into(), "uPi".into()],
        }))
    }

    /// Same algebra, different number of p-adic digits.
    pub fn with_digits(&self, digits: u32) -> Result<Arc<Algebra>> {
        let mut a = self.clone();
        a.zpk = self.zpk.with_k(digits)?;
        a.layout = self.layout.with_zpk(a.zpk);
        if let AlgebraKind::Matrix { ring, .. } = &mut a.kind {
            *ring = ring.with_precision(digits * ring.e)?;
        }
        Ok(Arc::new(a))
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn zpk(&self) -> Zpk {
        self.zpk
    }

    pub fn p(&self) -> u64 {
        self.zpk.p()
    }

    pub fn digits(&self) -> u32 {
        self.zpk.k()
    }

    pub fn offsets(&self) -> &[Q] {
        self.layout.offsets()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Denominator of the value group (e for matrix algebras, 2 for quaternions).
    pub fn ramification(&self) -> u32 {
        match &self.kind {
            AlgebraKind::Matrix { ring, .. } => ring.e,
            AlgebraKind::Quaternion { .. } => 2,
        }
    }

    pub fn matrix_size(&self) -> Option<usize> {
        match &self.kind {
            AlgebraKind::Matrix { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Vec<u64> {
        self.one.iter().map(|&c| self.zpk.reduce_i64(c)).collect()
    }

    pub fn basis(&self, a: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[a] = 1;
        v
    }

    pub fn from_ints(&self, coords: &[i64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.dim());
        coords.iter().map(|&c| self.zpk.reduce_i64(c)).collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| self.zpk.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| self.zpk.sub(a, b)).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().map(|&a| self.zpk.neg(a)).collect()
    }

    pub fn scale(&self, s: u64, x: &[u64]) -> Vec<u64> {
        x.iter().map(|&a| self.zpk.mul(s, a)).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let d = self.dim();
        let m = self.zpk.modulus() as u128;
        let mut acc = vec![0u128; d];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let prod = (xa as u128 * yb as u128) % m;
                for &(c, coef) in &self.table[a * d + b] {
                    let k = self.zpk.reduce_i64(coef) as u128;
                    acc[c] = (acc[c] + prod * k % m) % m;
                }
            }
        }
        acc.into_iter().map(|v| v as u64).collect()
    }

    pub fn commutator(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn pow(&self, x: &[u64], mut n: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = x.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    /// `min v_p(c_i) + off_i`, or the precision bound for zero.
    pub fn val(&self, x: &[u64]) -> Val {
        self.layout.val(x)
    }

    pub fn precision_bound(&self) -> Q {
        self.layout.precision_bound()
    }

    pub fn reduce_level(&self, x: &[u64], level: Q) -> Vec<u64> {
        self.layout.reduce_level(x, level)
    }

    /// Entry `(i, j)` of a matrix-algebra element as π-adic coordinates.
    pub fn entry(&self, x: &[u64], i: usize, j: usize) -> Vec<u64> {
        match &self.kind {
            AlgebraKind::Matrix { n, ring } => {
                let e = ring.e as usize;
                let s = (i * n + j) * e;
                x[s..s + e].to_vec()
            }
            _ => panic!("entry() on a non-matrix algebra"),
        }
    }

    pub fn index(&self, i: usize, j: usize, l: usize) -> usize {
        match &self.kind {
            AlgebraKind::Matrix { n, ring } => (i * n + j) * ring.e as usize + l,
            _ => panic!("index() on a non-matrix algebra"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::q;

    #[test]
    fn matrix_units_multiply() {
        let r = RingSpec::unramified(3, 4).unwrap();
        let a = Algebra::matrix(&r, 2).unwrap();
        let e12 = a.basis(a.index(0, 1, 0));
        let e21 = a.basis(a.index(1, 0, 0));
        let e11 = a.basis(a.index(0, 0, 0));
        assert_eq!(a.mul(&e12, &e21), e11);
        assert!(a.is_zero(&a.mul(&e12, &e12)));
    }

    #[test]
    fn ramified_valuations() {
        let r = RingSpec::pure(5, 2, 6).unwrap();
        let a = Algebra::matrix(&r, 1).unwrap();
        let pi = a.basis(1);
        assert_eq!(a.val(&pi), Val::Exact(q(1, 2)));
        let pi2 = a.mul(&pi, &pi);
        assert_eq!(pi2, vec![5, 0]);
        assert_eq!(a.val(&a.mul(&pi2, &pi)), Val::Exact(q(3, 2)));
        assert_eq!(a.val(&a.zero()), Val::AtLeast(qi(3)));
    }

    #[test]
    fn quaternion_relations() {
        let a = Algebra::quaternion(5, 2, 4).unwrap();
        let u = a.basis(1);
        let pi = a.basis(2);
        assert_eq!(a.mul(&u, &u), a.from_ints(&[2, 0, 0, 0]));
        assert_eq!(a.mul(&pi, &pi), a.from_ints(&[5, 0, 0, 0]));
        assert_eq!(a.mul(&pi, &u), a.neg(&a.mul(&u, &pi)));
        // associativity on the basis
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (x, y, z) = (a.basis(i), a.basis(j), a.basis(k));
                    assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
                }
            }
        }
        assert!(Algebra::quaternion(5, 4, 4).is_err());
    }

    #[test]
    fn level_reduction() {
        let r = RingSpec::pure(5, 2, 6).unwrap();
        let a = Algebra::matrix(&r, 1).unwrap();
        let x = a.from_ints(&[5 + 25, 1 + 5]);
        // keep valuations < 3/2: coordinate 0 mod 5^2, coordinate 1 mod 5
        assert_eq!(a.reduce_level(&x, q(3, 2)), vec![5, 1]);
        assert_eq!(a.reduce_level(&x, qi(0)), vec![0, 0]);
    }
}
