//! Truncated p-adic arithmetic: residues, Eisenstein rings, algebras over Z_p,
//! log/exp series, Smith normal form and homology of finite complexes.

pub mod algebra;
pub mod complex;
pub mod kernel;
pub mod layout;
pub mod matrix;
pub mod modint;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod snf;

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use algebra::{Algebra, AlgebraKind};
pub use layout::Layout;
pub use matrix::PAdicMatrix;
pub use modint::Zpk;
pub use ring::RingSpec;
pub use scalar::PAdicScalar;

/// Exact rational valuations. Denominators stay tiny (the ramification index).
pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Ratio::from_integer(n)
}

/// Smallest integer `>= x`.
pub fn ceil_q(x: Q) -> i64 {
    x.ceil().to_integer()
}

/// A valuation known exactly, or only bounded below by the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Exact(Q),
    AtLeast(Q),
}

impl Val {
    pub fn is_bottom(&self) -> bool {
        matches!(self, Val::AtLeast(_))
    }

    pub fn exact(&self) -> Option<Q> {
        match self {
            Val::Exact(v) => Some(*v),
            Val::AtLeast(_) => None,
        }
    }

    /// The lower bound carried by either variant.
    pub fn bound(&self) -> Q {
        match self {
            Val::Exact(v) | Val::AtLeast(v) => *v,
        }
    }

    /// Decides `self >= r`; `None` when the precision cannot tell.
    pub fn ge(&self, r: Q) -> Option<bool> {
        match self {
            Val::Exact(v) => Some(*v >= r),
            Val::AtLeast(b) => {
                if *b >= r {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    /// Decides `self > r`.
    pub fn gt(&self, r: Q) -> Option<bool> {
        match self {
            Val::Exact(v) => Some(*v > r),
            Val::AtLeast(b) => {
                if *b > r {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    pub fn min(self, other: Val) -> Val {
        match (self, other) {
            (Val::Exact(a), Val::Exact(b)) => Val::Exact(a.min(b)),
            (Val::Exact(a), Val::AtLeast(b)) | (Val::AtLeast(b), Val::Exact(a)) => {
                if a <= b {
                    Val::Exact(a)
                } else {
                    Val::AtLeast(b)
                }
            }
            (Val::AtLeast(a), Val::AtLeast(b)) => Val::AtLeast(a.min(b)),
        }
    }

    pub fn add(self, other: Val) -> Val {
        match (self, other) {
            (Val::Exact(a), Val::Exact(b)) => Val::Exact(a + b),
            (a, b) => Val::AtLeast(a.bound() + b.bound()),
        }
    }

    pub fn shift(self, by: Q) -> Val {
        match self {
            Val::Exact(a) => Val::Exact(a + by),
            Val::AtLeast(a) => Val::AtLeast(a + by),
        }
    }

    pub fn scale(self, by: Q) -> Val {
        match self {
            Val::Exact(a) => Val::Exact(a * by),
            Val::AtLeast(a) => Val::AtLeast(a * by),
        }
    }

    /// Total order used for sorting: exact values by size, bottoms last.
    pub fn sort_key(&self) -> (u8, Q) {
        match self {
            Val::Exact(v) => (0, *v),
            Val::AtLeast(v) => (1, *v),
        }
    }
}

impl PartialOrd for Val {
    /// Only exact values compare; anything involving bottom is unordered unless
    /// the bound already settles it.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Val::Exact(a), Val::Exact(b)) => Some(a.cmp(b)),
            (Val::Exact(a), Val::AtLeast(b)) if a < b => Some(Ordering::Less),
            (Val::AtLeast(a), Val::Exact(b)) if a > b => Some(Ordering::Greater),
            _ => None,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Exact(v) => write!(f, "{v}"),
            Val::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Serializable form of a rational, written as "a/b" or "a".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct QStr(pub Q);

impl From<QStr> for String {
    fn from(q: QStr) -> String {
        q.0.to_string()
    }
}

impl TryFrom<String> for QStr {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        parse_q(&s).map(QStr).ok_or_else(|| format!("bad rational {s:?}"))
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Ratio::new(n.trim().parse().ok()?, d))
        }
        None => Some(Ratio::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn val_decisions() {
        let a = Val::Exact(q(1, 2));
        let b = Val::AtLeast(qi(3));
        assert_eq!(a.ge(q(1, 2)), Some(true));
        assert_eq!(b.ge(qi(2)), Some(true));
        assert_eq!(b.ge(qi(4)), None);
        assert_eq!(a.min(b), a);
        assert_eq!(a.add(b), Val::AtLeast(q(7, 2)));
        assert!(a < b);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_q("3/2"), Some(q(3, 2)));
        assert_eq!(parse_q(" 4 "), Some(qi(4)));
        assert_eq!(parse_q("1/0"), None);
    }
}
