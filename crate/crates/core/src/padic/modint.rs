//! Arithmetic in Z/p^k with residues stored as `u64` in `[0, p^k)`.

use crate::error::{Error, Result};

// products of two residues below this bound fit in a u64
const SMALL: u64 = 1 << 32;

/// The residue ring Z/p^k. `k = 0` is the zero ring and is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zpk {
    p: u64,
    k: u32,
    modulus: u64,
}

impl Zpk {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidRing("exponent k must be positive".into()));
        }
        let modulus = checked_pow(p, k)
            .filter(|&m| m < (1u64 << 62))
            .ok_or_else(|| Error::InvalidRing(format!("{p}^{k} does not fit in 62 bits")))?;
        Ok(Zpk { p, k, modulus })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime, different exponent.
    pub fn with_k(&self, k: u32) -> Result<Self> {
        Zpk::new(self.p, k)
    }

    #[inline]
    pub fn reduce_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        self.reduce_i128(x as i128)
    }

    #[inline]
    pub fn reduce_u64(&self, x: u64) -> u64 {
        x % self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.modulus <= SMALL {
            a * b % self.modulus
        } else {
            ((a as u128 * b as u128) % self.modulus as u128) as u64
        }
    }

    /// `a + b*c`
    #[inline]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        if self.modulus <= SMALL {
            self.add(a, b * c % self.modulus)
        } else {
            ((a as u128 + b as u128 * c as u128) % self.modulus as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// p-adic valuation of a residue; `k` for zero.
    #[inline]
    pub fn val(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// `p^j` as a residue (zero when `j >= k`).
    pub fn p_pow(&self, j: u32) -> u64 {
        if j >= self.k {
            0
        } else {
            checked_pow(self.p, j).unwrap()
        }
    }

    /// Inverse of a unit.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let (g, x, _) = ext_gcd(a as i128, self.modulus as i128);
        debug_assert_eq!(g, 1);
        Some(self.reduce_i128(x))
    }

    /// Splits a nonzero residue as `p^v * u` with `u` a unit.
    pub fn split(&self, a: u64) -> (u32, u64) {
        let v = self.val(a);
        if v >= self.k {
            return (self.k, 0);
        }
        (v, a / checked_pow(self.p, v).unwrap())
    }

    /// Some `t` with `t * b = a`, provided `val(b) <= val(a)`.
    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        let (vb, ub) = self.split(b);
        if vb >= self.k {
            return if a == 0 { Some(0) } else { None };
        }
        let va = self.val(a);
        if va < vb {
            return None;
        }
        let q = a / checked_pow(self.p, vb).unwrap();
        Some(self.mul(q, self.inv(ub).unwrap()))
    }

    /// Symmetric lift into `(-m/2, m/2]`.
    pub fn signed(&self, a: u64) -> i128 {
        let m = self.modulus as i128;
        let a = a as i128;
        if a > m / 2 {
            a - m
        } else {
            a
        }
    }
}

pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(p: u64, mut n: i128) -> u32 {
    assert!(n != 0, "valuation of zero");
    let mut v = 0;
    while n % p as i128 == 0 {
        n /= p as i128;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let r = Zpk::new(3, 3).unwrap();
        assert_eq!(r.modulus(), 27);
        assert_eq!(r.mul(5, 11), 55 % 27);
        assert_eq!(r.val(18), 2);
        assert_eq!(r.val(0), 3);
        assert_eq!(r.mul(r.inv(2).unwrap(), 2), 1);
        assert!(r.inv(6).is_none());
        let t = r.div(18, 6).unwrap();
        assert_eq!(r.mul(t, 6), 18);
        assert!(r.div(3, 9).is_none());
        assert_eq!(r.signed(26), -1);
    }

    #[test]
    fn rejects_composite() {
        assert!(Zpk::new(9, 2).is_err());
        assert!(Zpk::new(3, 0).is_err());
    }
}
