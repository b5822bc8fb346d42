//! `log(1+X)` and `exp(X) - 1` in a truncated algebra.
//!
//! Both series need `v(X) > 1/(p-1)`. Terms are summed at a working precision
//! with enough extra digits that every division by `m` (or by `m!`) is exact,
//! then the result is cut back to the algebra's precision.

use super::algebra::Algebra;
use super::{qi, Val, Q};
use crate::error::{Error, Result};

fn checked_domain(alg: &Algebra, x: &[u64]) -> Result<Option<Q>> {
    match alg.val(x) {
        Val::AtLeast(_) => Ok(None),
        Val::Exact(w) => {
            let bound = Q::new(1, alg.p() as i64 - 1);
            if w <= bound {
                Err(Error::ConvergenceDomain { valuation: w, bound })
            } else {
                Ok(Some(w))
            }
        }
    }
}

/// Smallest `L` with `p^L >= m`.
fn ceil_log(p: u64, m: u64) -> i64 {
    let mut l = 0;
    let mut pw: u128 = 1;
    while pw < m as u128 {
        pw *= p as u128;
        l += 1;
    }
    l
}

fn floor_log(p: u64, m: u64) -> u32 {
    let mut l = 0;
    let mut pw: u128 = p as u128;
    while pw <= m as u128 {
        pw *= p as u128;
        l += 1;
    }
    l
}

fn vp_factorial(p: u64, m: u64) -> u32 {
    let mut v = 0;
    let mut pw = p;
    while pw <= m {
        v += (m / pw) as u32;
        pw = match pw.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    v
}

/// Number of log terms needed: every term from here on has valuation `>= M`.
pub fn log_terms(p: u64, w: Q, digits: u32) -> u64 {
    let target = qi(digits as i64);
    let mut m = 1u64;
    loop {
        if m >= p && qi(m as i64) * w - qi(ceil_log(p, m)) >= target {
            return m;
        }
        m += 1;
    }
}

/// Number of exp terms needed.
pub fn exp_terms(p: u64, w: Q, digits: u32) -> u64 {
    let target = qi(digits as i64);
    let slope = Q::new(1, p as i64 - 1);
    let mut m = 1u64;
    loop {
        if qi(m as i64) * w - qi(m as i64 - 1) * slope >= target {
            return m;
        }
        m += 1;
    }
}

/// `log(1+X) = Σ_{m>=1} (-1)^{m+1} X^m / m`.
pub fn log1p(alg: &Algebra, x: &[u64]) -> Result<Vec<u64>> {
    let Some(w) = checked_domain(alg, x)? else {
        return Ok(alg.zero());
    };
    let p = alg.p();
    let digits = alg.digits();
    let terms = log_terms(p, w, digits);
    let extra = floor_log(p, terms);
    let work = alg.with_digits(digits + extra)?;
    let wz = work.zpk();
    let mut power = x.to_vec();
    let mut sum = work.zero();
    for m in 1..terms {
        if m > 1 {
            power = work.mul(&power, x);
        }
        let mut term = Vec::with_capacity(power.len());
        let mr = wz.reduce_u64(m);
        for &c in &power {
            let t = wz.div(c, mr).ok_or_else(|| Error::InsufficientPrecision {
                what: format!("log series term {m} not divisible by {m}"),
                required: digits + extra + 1,
            })?;
            term.push(t);
        }
        sum = if m % 2 == 1 { work.add(&sum, &term) } else { work.sub(&sum, &term) };
    }
    Ok(truncate(alg, &sum))
}

/// `exp(X) - 1 = Σ_{m>=1} X^m / m!`.
pub fn expm1(alg: &Algebra, x: &[u64]) -> Result<Vec<u64>> {
    let Some(w) = checked_domain(alg, x)? else {
        return Ok(alg.zero());
    };
    let p = alg.p();
    let digits = alg.digits();
    let terms = exp_terms(p, w, digits);
    let extra = vp_factorial(p, terms) + 1;
    let work = alg.with_digits(digits + extra)?;
    let wz = work.zpk();
    let mut term = x.to_vec();
    let mut sum = x.to_vec();
    for m in 2..terms {
        let next = work.mul(&term, x);
        let mr = wz.reduce_u64(m);
        term = next
            .iter()
            .map(|&c| {
                wz.div(c, mr).ok_or_else(|| Error::InsufficientPrecision {
                    what: format!("exp series term {m} not divisible by {m}"),
                    required: digits + extra + 1,
                })
            })
            .collect::<Result<_>>()?;
        sum = work.add(&sum, &term);
    }
    Ok(truncate(alg, &sum))
}

fn truncate(alg: &Algebra, x: &[u64]) -> Vec<u64> {
    x.iter().map(|&c| alg.zpk().reduce_u64(c)).collect()
}

/// Some `Y` with `exp(Y)^p = 1+X` computed as `exp(log(1+X)/p)`. Returns `None`
/// when `log(1+X)` is not divisible by p, i.e. there is no root in the domain.
pub fn pth_root(alg: &Algebra, x: &[u64]) -> Result<Option<Vec<u64>>> {
    let l = log1p(alg, x)?;
    let z = alg.zpk();
    let p = alg.p();
    if l.iter().any(|&c| c % p != 0) {
        return Ok(None);
    }
    // the division loses one digit; recover it by working one digit higher
    let hi = alg.with_digits(alg.digits() + 1)?;
    let lhi = log1p(&hi, x)?;
    let mut y = Vec::with_capacity(lhi.len());
    for &c in &lhi {
        y.push(c / p);
    }
    let y: Vec<u64> = y.into_iter().map(|c| z.reduce_u64(c)).collect();
    match alg.val(&y) {
        Val::Exact(w) if w <= Q::new(1, p as i64 - 1) => Ok(None),
        _ => Ok(Some(expm1(alg, &y)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ring::RingSpec;

    #[test]
    fn nilpotent_log_is_exact() {
        let r = RingSpec::unramified(3, 5).unwrap();
        let a = Algebra::matrix(&r, 2).unwrap();
        let x = a.scale(3, &a.basis(a.index(0, 1, 0)));
        assert_eq!(log1p(&a, &x).unwrap(), x);
        assert_eq!(expm1(&a, &x).unwrap(), x);
    }

    #[test]
    fn domain_violation() {
        let r = RingSpec::pure(3, 2, 6).unwrap();
        let a = Algebra::matrix(&r, 1).unwrap();
        let pi = a.basis(1);
        assert!(matches!(log1p(&a, &pi), Err(Error::ConvergenceDomain { .. })));
    }

    #[test]
    fn round_trip_scalar() {
        let r = RingSpec::unramified(3, 8).unwrap();
        let a = Algebra::matrix(&r, 1).unwrap();
        for c in [3i64, 6, 9, 12, 3 * 7, 81] {
            let x = a.from_ints(&[c]);
            let l = log1p(&a, &x).unwrap();
            assert_eq!(a.val(&l), a.val(&x));
            assert_eq!(expm1(&a, &l).unwrap(), x);
        }
    }

    #[test]
    fn roots() {
        let r = RingSpec::unramified(3, 6).unwrap();
        let a = Algebra::matrix(&r, 1).unwrap();
        let x = a.from_ints(&[9]);
        let y = pth_root(&a, &x).unwrap().unwrap();
        let one_plus_y = a.add(&a.one(), &y);
        let cube = a.pow(&one_plus_y, 3);
        assert_eq!(a.sub(&cube, &a.one()), x);
        assert!(pth_root(&a, &a.from_ints(&[3])).unwrap().is_none());
    }
}
