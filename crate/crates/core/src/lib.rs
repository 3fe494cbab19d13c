//! Exact certification of the finite computations around the Klein quartic
//! reflection group and its ball-quotient orbifolds.

pub mod congruence;
pub mod error;
pub mod group;
pub mod invariants;
pub mod klein;
pub mod orbifold;
pub mod presentations;
pub mod report;
pub mod sporadic;

pub use error::{CertError, Result};
