use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Commutative ring operations on borrowed values.
///
/// Polynomials implement this too, which is all cofactor determinants need.
pub trait RingOps: Clone + PartialEq + Debug {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// An exact field element.
///
/// Some fields carry runtime context (the conductor of a cyclotomic field,
/// the modulus of a finite field), so constants are produced from an
/// existing element rather than from nothing.
pub trait Scalar: RingOps + Eq + Hash + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }
}

/// Complex conjugation (identity on fields without one).
pub trait Conjugate {
    fn conj(&self) -> Self;
}
