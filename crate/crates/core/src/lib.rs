//! Filtered p-adic groups, their integral Lazard Lie lattices, and exact
//! comparisons between continuous group cohomology and Lie algebra cohomology
//! with Z/p^k coefficients.

#![allow(clippy::int_plus_one)]

pub mod error;
pub mod filtered;
pub mod formal_groups;
pub mod group_cohom;
pub mod harness;
pub mod lazard_lie;
pub mod lazmap;
pub mod lie_cohom;
pub mod padic;
pub mod pgroups;

pub use error::{Error, Result};
