use thiserror::Error;

use crate::padic::Q;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("series does not converge: valuation {valuation} must exceed {bound}")]
    ConvergenceDomain { valuation: Q, bound: Q },

    #[error("insufficient precision: {what} (need at least {required} p-adic digits)")]
    InsufficientPrecision { what: String, required: u32 },

    #[error("matrix of size {rows}x{cols} exceeds the oracle cap {cap}x{cap}")]
    OracleCap { rows: usize, cols: usize, cap: usize },

    #[error("enumeration cap exceeded: {what} needs {required}, cap is {cap}")]
    CapExceeded { what: String, required: u128, cap: u128 },

    #[error("truncation degree {degree} too small: {what}")]
    Truncation { degree: usize, what: String },

    #[error("order bound violated: {0}")]
    OrderBound(String),

    #[error("level {level} is below rho = {rho}")]
    LevelBelowRho { level: u32, rho: u32 },

    #[error("inconsistent graded structure: {0}")]
    Inconsistent(String),

    #[error("lattice is not closed under the bracket: {0}")]
    NotInLattice(String),

    #[error("module hypothesis failed for generator {generator}: {reason}")]
    ModuleImage { generator: usize, reason: String },

    #[error("d∘d is nonzero in degree {degree} at row {row}, column {col}")]
    NonzeroSquare { degree: usize, row: usize, col: usize },

    #[error("input is not a cocycle: {0}")]
    NotCocycle(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
