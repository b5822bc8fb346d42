//! Smith normal form over Z (arbitrary precision) and over the chain ring Z/p^k.
//!
//! Over Z/p^k every ideal is `(p^a)`, so a pivot of minimal valuation divides
//! everything left in the active block and elimination never needs gcd steps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modint::Zpk;
use crate::error::{Error, Result};

/// Largest matrix the brute-force oracle accepts.
pub const ORACLE_CAP: usize = 8;

/// Dense matrix over Z/p^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub ring: Zpk,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(ring: Zpk, rows: usize, cols: usize) -> Self {
        ModMatrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: Zpk, n: usize) -> Self {
        let mut m = ModMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus();
        }
        m
    }

    pub fn from_rows(ring: Zpk, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = ModMatrix::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = ring.reduce_i64(v);
            }
        }
        m
    }

    /// Rows of residues already reduced (or to be reduced) mod the ring modulus.
    pub fn from_residues(ring: Zpk, rows: &[Vec<u64>], cols: usize) -> Self {
        let mut m = ModMatrix::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = ring.reduce_u64(v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = ModMatrix::zeros(self.ring, self.rows, o.cols);
        let m = self.ring.modulus() as u128;
        for i in 0..self.rows {
            let mut acc = vec![0u128; o.cols];
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    let b = o.get(t, j);
                    if b != 0 {
                        *slot = (*slot + a as u128 * b as u128) % m;
                    }
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u64);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if a != 0 && x != 0 {
                        acc = self.ring.mul_add(acc, a, x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut t = ModMatrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduction to a smaller modulus `p^k'`, `k' <= k`.
    pub fn reduce(&self, ring: Zpk) -> ModMatrix {
        assert_eq!(ring.p(), self.ring.p());
        assert!(ring.k() <= self.ring.k());
        ModMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| ring.reduce_u64(x)).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst += s * row_src
    fn add_row(&mut self, dst: usize, src: usize, s: u64) {
        if s == 0 {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            let v = self.data[src * c + j];
            if v != 0 {
                self.data[dst * c + j] = self.ring.mul_add(self.data[dst * c + j], s, v);
            }
        }
    }

    /// col_dst += s * col_src
    fn add_col(&mut self, dst: usize, src: usize, s: u64) {
        if s == 0 {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            let v = self.data[i * c + src];
            if v != 0 {
                self.data[i * c + dst] = self.ring.mul_add(self.data[i * c + dst], s, v);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        let c = self.cols;
        for j in 0..c {
            self.data[r * c + j] = self.ring.mul(self.data[r * c + j], s);
        }
    }

    fn scale_col(&mut self, col: usize, s: u64) {
        let c = self.cols;
        for i in 0..self.rows {
            self.data[i * c + col] = self.ring.mul(self.data[i * c + col], s);
        }
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.ring.modulus())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `P · A · Q = D` with `D` diagonal of `p^{exponents[i]}`.
#[derive(Clone, Debug)]
pub struct ModTransforms {
    pub p: ModMatrix,
    pub p_inv: ModMatrix,
    pub q: ModMatrix,
    pub q_inv: ModMatrix,
}

#[derive(Clone, Debug)]
pub struct ModSnf {
    pub ring: Zpk,
    /// One exponent per diagonal position (`min(rows, cols)` of them),
    /// non-decreasing; `k` stands for a zero diagonal entry.
    pub exponents: Vec<u32>,
    pub transforms: Option<ModTransforms>,
}

impl ModSnf {
    /// Number of diagonal entries that are nonzero.
    pub fn rank(&self) -> usize {
        self.exponents.iter().filter(|&&a| a < self.ring.k()).count()
    }

    pub fn divisors(&self) -> Vec<BigInt> {
        self.exponents.iter().map(|&a| BigInt::from(self.ring.p()).pow(a)).collect()
    }
}

/// Smith normal form over Z/p^k by minimal-valuation pivoting.
pub fn snf_mod(a: &ModMatrix, keep_transforms: bool) -> ModSnf {
    let ring = a.ring;
    let k = ring.k();
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut tr = keep_transforms.then(|| ModTransforms {
        p: ModMatrix::identity(ring, r),
        p_inv: ModMatrix::identity(ring, r),
        q: ModMatrix::identity(ring, c),
        q_inv: ModMatrix::identity(ring, c),
    });
    let n = r.min(c);
    let mut exps = Vec::with_capacity(n);
    for t in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..r {
            for j in t..c {
                let v = m.get(i, j);
                if v != 0 {
                    let val = ring.val(v);
                    if best.is_none_or(|b| val < b.0) {
                        best = Some((val, i, j));
                        if val == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((a_val, pi, pj)) = best else {
            exps.extend(std::iter::repeat_n(k, n - t));
            break;
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        if let Some(tr) = tr.as_mut() {
            tr.p.swap_rows(t, pi);
            tr.p_inv.swap_cols(t, pi);
            tr.q.swap_cols(t, pj);
            tr.q_inv.swap_rows(t, pj);
        }
        let (_, unit) = ring.split(m.get(t, t));
        let uinv = ring.inv(unit).unwrap();
        m.scale_row(t, uinv);
        if let Some(tr) = tr.as_mut() {
            tr.p.scale_row(t, uinv);
            tr.p_inv.scale_col(t, unit);
        }
        let pa = ring.p_pow(a_val);
        for i in t + 1..r {
            let b = m.get(i, t);
            if b != 0 {
                let qv = b / pa;
                let s = ring.neg(qv);
                m.add_row(i, t, s);
                if let Some(tr) = tr.as_mut() {
                    tr.p.add_row(i, t, s);
                    // inverse of R_i += s R_t is R_i -= s R_t, i.e. C_t += s C_i on the left inverse
                    tr.p_inv.add_col(t, i, qv);
                }
            }
        }
        for j in t + 1..c {
            let b = m.get(t, j);
            if b != 0 {
                let qv = b / pa;
                let s = ring.neg(qv);
                m.add_col(j, t, s);
                if let Some(tr) = tr.as_mut() {
                    tr.q.add_col(j, t, s);
                    tr.q_inv.add_row(t, j, qv);
                }
            }
        }
        exps.push(a_val);
    }
    ModSnf { ring, exponents: exps, transforms: tr }
}

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(t, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Replaces rows (a, b) by (x*a + y*b, z*a + w*b).
    fn mix_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        let c = self.cols;
        for j in 0..c {
            let ra = self.data[a * c + j].clone();
            let rb = self.data[b * c + j].clone();
            self.data[a * c + j] = x * &ra + y * &rb;
            self.data[b * c + j] = z * &ra + w * &rb;
        }
    }

    fn mix_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        let c = self.cols;
        for i in 0..self.rows {
            let ca = self.data[i * c + a].clone();
            let cb = self.data[i * c + b].clone();
            self.data[i * c + a] = x * &ca + y * &cb;
            self.data[i * c + b] = z * &ca + w * &cb;
        }
    }
}

#[derive(Clone, Debug)]
pub struct IntTransforms {
    pub u: IntMatrix,
    pub v: IntMatrix,
}

#[derive(Clone, Debug)]
pub struct IntSnf {
    /// `min(rows, cols)` non-negative divisors, each dividing the next; zeros last.
    pub divisors: Vec<BigInt>,
    pub transforms: Option<IntTransforms>,
}

/// Unimodular `(x, y, z, w)` sending `(a, b)` to `(gcd, 0)`. When `a | b` this
/// is plain elimination, so entries already cleared elsewhere stay cleared.
fn gcd_step(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if b.is_multiple_of(a) {
        return (BigInt::one(), BigInt::zero(), -(b / a), BigInt::one());
    }
    let eg = a.extended_gcd(b);
    let g = eg.gcd;
    (eg.x, eg.y, -(b / &g), a / &g)
}

/// Integer Smith normal form using 2x2 unimodular gcd steps.
pub fn snf_int(a: &IntMatrix, keep_transforms: bool) -> IntSnf {
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut tr = keep_transforms.then(|| IntTransforms { u: IntMatrix::identity(r), v: IntMatrix::identity(c) });
    let n = r.min(c);
    let mut t = 0;
    while t < n {
        // pivot: smallest nonzero absolute value in the active block
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = m.get(i, j);
                if !v.is_zero() && best.as_ref().is_none_or(|b| v.abs() < b.0) {
                    best = Some((v.abs(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        if let Some(tr) = tr.as_mut() {
            tr.u.swap_rows(t, pi);
            tr.v.swap_cols(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..r {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let a0 = m.get(t, t).clone();
                let b0 = m.get(i, t).clone();
                let (x, y, z, w) = gcd_step(&a0, &b0);
                m.mix_rows(t, i, &x, &y, &z, &w);
                if let Some(tr) = tr.as_mut() {
                    tr.u.mix_rows(t, i, &x, &y, &z, &w);
                }
                changed = true;
            }
            for j in t + 1..c {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let a0 = m.get(t, t).clone();
                let b0 = m.get(t, j).clone();
                let (x, y, z, w) = gcd_step(&a0, &b0);
                m.mix_cols(t, j, &x, &y, &z, &w);
                if let Some(tr) = tr.as_mut() {
                    tr.v.mix_cols(t, j, &x, &y, &z, &w);
                }
                changed = true;
            }
            if !changed {
                // the pivot must divide the rest of the block
                let piv = m.get(t, t).clone();
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !m.get(i, j).is_multiple_of(&piv)));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        let zero = BigInt::zero();
                        m.mix_rows(t, i, &one, &one, &zero, &one);
                        if let Some(tr) = tr.as_mut() {
                            tr.u.mix_rows(t, i, &one, &one, &zero, &one);
                        }
                    }
                    None => break,
                }
            }
        }
        if m.get(t, t).is_negative() {
            let neg = -m.get(t, t).clone();
            m.set(t, t, neg);
            if let Some(tr) = tr.as_mut() {
                for j in 0..r {
                    let v = -tr.u.get(t, j).clone();
                    tr.u.set(t, j, v);
                }
            }
        }
        t += 1;
    }
    let divisors = (0..n).map(|i| m.get(i, i).clone()).collect();
    IntSnf { divisors, transforms: tr }
}

/// Reference SNF by plain Euclidean row/column reduction, for tests only.
pub fn snf_oracle(a: &IntMatrix) -> Result<Vec<BigInt>> {
    if a.rows > ORACLE_CAP || a.cols > ORACLE_CAP {
        return Err(Error::OracleCap { rows: a.rows, cols: a.cols, cap: ORACLE_CAP });
    }
    Ok(plain_reduce(a))
}

fn finish(m: Vec<Vec<BigInt>>, n: usize) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = (0..n).map(|i| m[i][i].abs()).collect();
    // zeros sort last, nonzero by divisibility (which equals size order here)
    d.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => a.cmp(b),
    });
    d
}

/// Oracle for Z/p^k: SNF over Z of `[A | p^k I]`, keeping the p-parts.
pub fn snf_mod_oracle(a: &ModMatrix) -> Result<Vec<u32>> {
    let (r, c) = (a.rows, a.cols);
    let ring = a.ring;
    let mut big = IntMatrix::zeros(r, c + r);
    for i in 0..r {
        for j in 0..c {
            big.set(i, j, BigInt::from(a.get(i, j)));
        }
        big.set(i, c + i, BigInt::from(ring.modulus()));
    }
    if r > ORACLE_CAP || c > ORACLE_CAP {
        return Err(Error::OracleCap { rows: r, cols: c, cap: ORACLE_CAP });
    }
    let d = plain_reduce(&big);
    let p = BigInt::from(ring.p());
    let mut exps: Vec<u32> = d
        .iter()
        .map(|x| {
            let mut x = x.clone();
            let mut v = 0;
            while !x.is_zero() && x.is_multiple_of(&p) && v < ring.k() {
                x /= &p;
                v += 1;
            }
            v
        })
        .collect();
    exps.sort();
    exps.truncate(r.min(c));
    // rows beyond the column count never contribute a diagonal position
    while exps.len() < r.min(c) {
        exps.push(ring.k());
    }
    Ok(exps)
}

fn plain_reduce(a: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = (a.rows, a.cols);
    let mut m: Vec<Vec<BigInt>> = (0..r).map(|i| (0..c).map(|j| a.get(i, j).clone()).collect()).collect();
    let n = r.min(c);
    for t in 0..n {
        loop {
            let mut piv: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && piv.is_none_or(|(a, b)| v.abs() < m[a][b].abs()) {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else {
                return finish(m, n);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                let qv = m[i][t].div_floor(&p);
                for j in t..c {
                    let d = &qv * &m[t][j];
                    m[i][j] -= d;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..c {
                let qv = m[t][j].div_floor(&p);
                for i in t..r {
                    let d = &qv * &m[i][t];
                    m[i][j] -= d;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let mut fixed = true;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !m[i][j].is_multiple_of(&p) {
                        for jj in t..c {
                            let v = m[i][jj].clone();
                            m[t][jj] += v;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish(m, n)
}

/// Ring for the text matrix format: modulus 0 means Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeffs {
    Integers,
    Mod(Zpk),
}

#[derive(Clone, Debug)]
pub enum ParsedMatrix {
    Int(IntMatrix),
    Mod(ModMatrix),
}

/// Parses "rows cols modulus" followed by row-major integers.
pub fn parse_matrix(text: &str) -> Result<ParsedMatrix> {
    let mut toks = text.split_whitespace();
    let mut next = |what: &str| -> Result<i128> {
        let t = toks.next().ok_or_else(|| Error::Parse { line: 1, msg: format!("missing {what}") })?;
        t.parse::<i128>().map_err(|_| Error::Parse { line: 1, msg: format!("bad {what}: {t:?}") })
    };
    let rows = next("rows")? as usize;
    let cols = next("cols")? as usize;
    let modulus = next("modulus")?;
    let mut vals = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        vals.push(next("entry")?);
    }
    if modulus == 0 {
        let data = vals.into_iter().map(BigInt::from).collect();
        return Ok(ParsedMatrix::Int(IntMatrix { rows, cols, data }));
    }
    let (p, k) = prime_power(modulus as u64)
        .ok_or_else(|| Error::Parse { line: 1, msg: format!("modulus {modulus} is not a prime power") })?;
    let ring = Zpk::new(p, k)?;
    let data = vals.into_iter().map(|v| ring.reduce_i128(v)).collect();
    Ok(ParsedMatrix::Mod(ModMatrix { ring, rows, cols, data }))
}

/// `n = p^k` with `p` prime, if it is one.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integer_examples() {
        let id = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(snf_int(&id, false).divisors, ints(&[1, 1]));
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(snf_int(&a, false).divisors, ints(&[2, 4]));
        assert_eq!(snf_oracle(&a).unwrap(), ints(&[2, 4]));
        let b = IntMatrix::from_rows(&[vec![6, 0], vec![0, 10]]);
        assert_eq!(snf_int(&b, false).divisors, ints(&[2, 30]));
        assert_eq!(snf_oracle(&b).unwrap(), ints(&[2, 30]));
        let z = IntMatrix::from_rows(&[vec![0]]);
        assert_eq!(snf_oracle(&z).unwrap(), ints(&[0]));
        assert_eq!(snf_int(&z, false).divisors, ints(&[0]));
    }

    #[test]
    fn transforms_diagonalize() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = snf_int(&a, true);
        let t = s.transforms.unwrap();
        let d = t.u.mul(&a).mul(&t.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { s.divisors[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expect);
            }
        }
        assert_eq!(s.divisors, snf_oracle(&a).unwrap());
    }

    #[test]
    fn mod_examples() {
        let r = Zpk::new(3, 3).unwrap();
        let a = ModMatrix::from_rows(r, &[vec![3]]);
        assert_eq!(snf_mod(&a, false).exponents, vec![1]);
        let b = ModMatrix::from_rows(r, &[vec![9, 3, 0], vec![0, 0, 0]]);
        let s = snf_mod(&b, true);
        assert_eq!(s.exponents, vec![1, 3]);
        let t = s.transforms.unwrap();
        let d = t.p.mul(&b).mul(&t.q);
        assert_eq!(d.get(0, 0), 3);
        assert_eq!(t.p.mul(&t.p_inv), ModMatrix::identity(r, 2));
        assert_eq!(t.q.mul(&t.q_inv), ModMatrix::identity(r, 3));
        assert_eq!(snf_mod_oracle(&b).unwrap(), vec![1, 3]);
    }

    #[test]
    fn text_format() {
        match parse_matrix("2 2 27\n3 0\n0 9\n").unwrap() {
            ParsedMatrix::Mod(m) => assert_eq!(snf_mod(&m, false).exponents, vec![1, 2]),
            _ => panic!(),
        }
        match parse_matrix("1 1 0\n-4").unwrap() {
            ParsedMatrix::Int(m) => assert_eq!(snf_int(&m, false).divisors, ints(&[4])),
            _ => panic!(),
        }
        assert!(parse_matrix("1 1 6\n1").is_err());
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
    }
}
