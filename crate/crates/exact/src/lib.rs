//! Exact arithmetic kernel.
//!
//! Everything here is exact: arbitrary-precision rationals, cyclotomic
//! fields `Q(zeta_N)` in the power basis modulo the `N`-th cyclotomic
//! polynomial, prime fields and their quadratic extensions, sparse
//! multivariate polynomials and dense matrices over any of these. The only
//! approximate code is [`interval`], which produces rigorous rational
//! enclosures used to certify signs of real cyclotomic numbers.

pub mod cyclotomic;
pub mod error;
pub mod finite_field;
pub mod interval;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use cyclotomic::{cyc_make, Cyclotomic};
pub use error::ExactError;
pub use finite_field::{Gf, GfField};
pub use matrix::Matrix;
pub use poly::MultiPoly;
pub use rational::{rat, Rational};
pub use scalar::{Conjugate, RingOps, Scalar};
