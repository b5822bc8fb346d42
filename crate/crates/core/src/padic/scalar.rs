//! Elements of `R/π^N` as a thin view over the rank-e algebra `M_1(R)`.

use std::fmt;
use std::sync::Arc;

use super::algebra::Algebra;
use super::ring::RingSpec;
use super::Val;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct PAdicScalar {
    alg: Arc<Algebra>,
    coords: Vec<u64>,
}

impl PartialEq for PAdicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.alg == other.alg
    }
}

impl PAdicScalar {
    pub fn ring_algebra(ring: &RingSpec) -> Result<Arc<Algebra>> {
        Algebra::matrix(ring, 1)
    }

    pub fn from_coords(alg: Arc<Algebra>, coords: Vec<u64>) -> Self {
        assert_eq!(coords.len(), alg.dim());
        PAdicScalar { alg, coords }
    }

    /// From integer coordinates on `1, π, …, π^{e-1}`.
    pub fn from_ints(alg: Arc<Algebra>, ints: &[i64]) -> Self {
        let coords = alg.from_ints(ints);
        PAdicScalar { alg, coords }
    }

    pub fn from_int(alg: Arc<Algebra>, n: i64) -> Self {
        let mut ints = vec![0i64; alg.dim()];
        ints[0] = n;
        PAdicScalar::from_ints(alg, &ints)
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        PAdicScalar::from_int(alg, 0)
    }

    pub fn one(alg: Arc<Algebra>) -> Self {
        PAdicScalar::from_int(alg, 1)
    }

    /// The uniformizer (equal to `p` when `e = 1`).
    pub fn pi(alg: Arc<Algebra>) -> Self {
        let coords = if alg.dim() == 1 {
            vec![alg.zpk().reduce_u64(alg.p())]
        } else {
            alg.basis(1)
        };
        PAdicScalar { alg, coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn val(&self) -> Val {
        self.alg.val(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.alg.is_zero(&self.coords)
    }

    fn lift(&self, coords: Vec<u64>) -> Self {
        PAdicScalar { alg: self.alg.clone(), coords }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.lift(self.alg.add(&self.coords, &o.coords))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.lift(self.alg.sub(&self.coords, &o.coords))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.lift(self.alg.mul(&self.coords, &o.coords))
    }

    pub fn neg(&self) -> Self {
        self.lift(self.alg.neg(&self.coords))
    }

    pub fn pow(&self, n: u64) -> Self {
        self.lift(self.alg.pow(&self.coords, n))
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}*pi^{i}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
