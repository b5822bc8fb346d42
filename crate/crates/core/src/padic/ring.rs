//! Totally ramified extensions R = Z_p[π], π a root of an Eisenstein polynomial.

use serde::{Deserialize, Serialize};

use super::modint::{is_prime, vp_int, Zpk};
use super::{q, Q};
use crate::error::{Error, Result};

/// `R/π^N` with `R = Z_p[π]`, `f(π) = 0` for the monic Eisenstein `f`.
///
/// `eisenstein_poly` lists coefficients from the constant term up to the
/// leading 1. For `e = 1` it is `[-p, 1]`, i.e. `π = p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default)]
    pub eisenstein_poly: Vec<i64>,
    pub precision_n: u32,
}

fn one() -> u32 {
    1
}

impl RingSpec {
    pub fn unramified(p: u64, precision_n: u32) -> Result<Self> {
        RingSpec::new(p, 1, vec![-(p as i64), 1], precision_n)
    }

    /// `π^e = p`.
    pub fn pure(p: u64, e: u32, precision_n: u32) -> Result<Self> {
        let mut poly = vec![0i64; e as usize + 1];
        poly[0] = -(p as i64);
        poly[e as usize] = 1;
        RingSpec::new(p, e, poly, precision_n)
    }

    pub fn new(p: u64, e: u32, eisenstein_poly: Vec<i64>, precision_n: u32) -> Result<Self> {
        let r = RingSpec { p, e, eisenstein_poly, precision_n };
        r.validate()?;
        Ok(r)
    }

    /// Fills in the default polynomial when it was omitted and checks everything.
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidRing(format!("{} is not prime", self.p)));
        }
        if self.e == 0 {
            return Err(Error::InvalidRing("ramification index must be >= 1".into()));
        }
        if self.precision_n == 0 {
            return Err(Error::InvalidRing("precision_n must be >= 1".into()));
        }
        let f = &self.eisenstein_poly;
        if f.len() != self.e as usize + 1 || f[self.e as usize] != 1 {
            return Err(Error::InvalidRing(format!(
                "eisenstein_poly must be monic of degree {} (got {:?})",
                self.e, f
            )));
        }
        if f[0] == 0 || vp_int(self.p, f[0] as i128) != 1 {
            return Err(Error::InvalidRing("constant term must have valuation exactly 1".into()));
        }
        for (i, &a) in f.iter().enumerate().take(self.e as usize).skip(1) {
            if a != 0 && vp_int(self.p, a as i128) == 0 {
                return Err(Error::InvalidRing(format!("coefficient of π^{i} is a unit")));
            }
        }
        Zpk::new(self.p, self.digits())?;
        Ok(())
    }

    /// Completes a spec read from a file where the polynomial may be omitted.
    pub fn normalized(mut self) -> Result<Self> {
        if self.eisenstein_poly.is_empty() {
            let mut poly = vec![0i64; self.e as usize + 1];
            poly[0] = -(self.p as i64);
            poly[self.e as usize] = 1;
            self.eisenstein_poly = poly;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn with_precision(&self, precision_n: u32) -> Result<Self> {
        RingSpec::new(self.p, self.e, self.eisenstein_poly.clone(), precision_n)
    }

    /// p-adic digits kept per π-adic coordinate: `M = ceil(N/e)`.
    pub fn digits(&self) -> u32 {
        self.precision_n.div_ceil(self.e)
    }

    pub fn zpk(&self) -> Zpk {
        Zpk::new(self.p, self.digits()).expect("validated ring")
    }

    /// Smallest integer strictly larger than `e/(p-1)`.
    pub fn rho(&self) -> u32 {
        self.e / (self.p as u32 - 1) + 1
    }

    /// `1/(p-1)`, the convergence threshold for log and exp.
    pub fn log_bound(&self) -> Q {
        q(1, self.p as i64 - 1)
    }

    /// Integer coordinates of `π^m` on `1, π, …, π^{e-1}`.
    pub fn pi_power(&self, m: usize) -> Vec<i128> {
        let e = self.e as usize;
        let mut cur = vec![0i128; e];
        cur[0] = 1;
        for _ in 0..m {
            // multiply by π and reduce π^e = -Σ a_i π^i
            let top = cur[e - 1];
            for i in (1..e).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= top * self.eisenstein_poly[i] as i128;
                }
            }
        }
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(RingSpec::unramified(3, 4).unwrap().rho(), 1);
        assert_eq!(RingSpec::pure(5, 2, 4).unwrap().rho(), 1);
        assert_eq!(RingSpec::pure(3, 2, 4).unwrap().rho(), 2);
        assert_eq!(RingSpec::unramified(2, 4).unwrap().rho(), 2);
    }

    #[test]
    fn digits_round_up() {
        let r = RingSpec::pure(5, 2, 5).unwrap();
        assert_eq!(r.digits(), 3);
    }

    #[test]
    fn rejects_non_eisenstein() {
        assert!(RingSpec::new(3, 2, vec![-9, 0, 1], 4).is_err());
        assert!(RingSpec::new(3, 2, vec![-3, 1, 1], 4).is_err());
        assert!(RingSpec::new(3, 2, vec![-3, 3, 1], 4).is_ok());
    }

    #[test]
    fn pi_powers_reduce() {
        let r = RingSpec::pure(5, 2, 4).unwrap();
        assert_eq!(r.pi_power(2), vec![5, 0]);
        assert_eq!(r.pi_power(3), vec![0, 5]);
        let r = RingSpec::new(3, 2, vec![-3, 3, 1], 4).unwrap();
        // π² = 3 - 3π
        assert_eq!(r.pi_power(2), vec![3, -3]);
    }
}
