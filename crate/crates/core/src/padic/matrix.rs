//! Square matrices over `R/π^N`, stored as elements of the algebra `M_n(R)`.

use std::sync::Arc;

use super::algebra::Algebra;
use super::ring::RingSpec;
use super::scalar::PAdicScalar;
use super::series;
use super::Val;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PAdicMatrix {
    alg: Arc<Algebra>,
    n: usize,
    coords: Vec<u64>,
}

impl PartialEq for PAdicMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coords == other.coords
    }
}

impl PAdicMatrix {
    pub fn algebra(ring: &RingSpec, n: usize) -> Result<Arc<Algebra>> {
        Algebra::matrix(ring, n)
    }

    pub fn from_coords(alg: Arc<Algebra>, coords: Vec<u64>) -> Self {
        let n = alg.matrix_size().expect("matrix algebra");
        assert_eq!(coords.len(), alg.dim());
        PAdicMatrix { alg, n, coords }
    }

    /// Builds a matrix from integer entries (each an element of `Z ⊂ R`).
    pub fn from_int_rows(alg: Arc<Algebra>, rows: &[Vec<i64>]) -> Result<Self> {
        let n = alg.matrix_size().expect("matrix algebra");
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("expected a {n}x{n} matrix")));
        }
        let mut coords = alg.zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                coords[alg.index(i, j, 0)] = alg.zpk().reduce_i64(v);
            }
        }
        Ok(PAdicMatrix { alg, n, coords })
    }

    pub fn from_entries(alg: Arc<Algebra>, entries: &[Vec<PAdicScalar>]) -> Result<Self> {
        let n = alg.matrix_size().expect("matrix algebra");
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("expected a {n}x{n} matrix")));
        }
        let mut coords = alg.zero();
        for (i, row) in entries.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                for (l, &c) in s.coords().iter().enumerate() {
                    coords[alg.index(i, j, l)] = alg.zpk().reduce_u64(c);
                }
            }
        }
        Ok(PAdicMatrix { alg, n, coords })
    }

    pub fn identity(alg: Arc<Algebra>) -> Self {
        let coords = alg.one();
        PAdicMatrix::from_coords(alg, coords)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn alg(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn entry(&self, i: usize, j: usize, scalars: &Arc<Algebra>) -> PAdicScalar {
        PAdicScalar::from_coords(scalars.clone(), self.alg.entry(&self.coords, i, j))
    }

    fn lift(&self, coords: Vec<u64>) -> Self {
        PAdicMatrix { alg: self.alg.clone(), n: self.n, coords }
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

    /// `ω(A)`: the minimum entry valuation.
    pub fn omega(&self) -> Val {
        self.alg.val(&self.coords)
    }

    /// `ω(A - 1)`.
    pub fn omega_unit(&self) -> Val {
        self.alg.val(&self.alg.sub(&self.coords, &self.alg.one()))
    }

    pub fn minus_identity(&self) -> Self {
        self.lift(self.alg.sub(&self.coords, &self.alg.one()))
    }

    pub fn plus_identity(&self) -> Self {
        self.lift(self.alg.add(&self.coords, &self.alg.one()))
    }

    pub fn log(&self) -> Result<Self> {
        let x = self.alg.sub(&self.coords, &self.alg.one());
        Ok(self.lift(series::log1p(&self.alg, &x)?))
    }

    pub fn exp(&self) -> Result<Self> {
        let y = series::expm1(&self.alg, &self.coords)?;
        Ok(self.lift(self.alg.add(&y, &self.alg.one())))
    }
}

/// `log(A)` for `ω(A - 1) > 1/(p-1)`.
pub fn matrix_log(a: &PAdicMatrix) -> Result<PAdicMatrix> {
    a.log()
}

/// `exp(X)` for `ω(X) > 1/(p-1)`.
pub fn matrix_exp(x: &PAdicMatrix) -> Result<PAdicMatrix> {
    x.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_scalar_matrix() {
        let r = RingSpec::unramified(3, 3).unwrap();
        let alg = Algebra::matrix(&r, 2).unwrap();
        let a = PAdicMatrix::from_int_rows(alg.clone(), &[vec![4, 0], vec![0, 4]]).unwrap();
        let l = matrix_log(&a).unwrap();
        // log 4 = 3 - 9/2 + 9 - 81/4 + ... ≡ 3 - 9/2 + 9 (mod 27)
        let inv2 = r.zpk().inv(2).unwrap();
        let z = r.zpk();
        let expect = z.add(z.sub(3, z.mul(9, inv2)), 9);
        assert_eq!(l.coords()[alg.index(0, 0, 0)], expect);
        assert_eq!(l.coords()[alg.index(1, 1, 0)], expect);
        assert_eq!(matrix_exp(&l).unwrap(), a);
    }
}
