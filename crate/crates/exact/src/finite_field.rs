//! Prime fields `F_p` and quadratic extensions `F_p[u]/(u^2 - m1*u - m0)`.
//!
//! The modulus is part of every element's identity; combining elements of
//! two differently presented fields panics instead of silently mixing them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ExactError;
use crate::scalar::{Conjugate, RingOps, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GfField {
    p: u32,
    /// 1 or 2
    deg: u8,
    /// `u^2 = m1*u + m0` when `deg == 2`.
    m0: u32,
    m1: u32,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl GfField {
    pub fn prime(p: u32) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(GfField {
            p,
            deg: 1,
            m0: 0,
            m1: 0,
        })
    }

    /// `F_p[u]` with `u^2 = m1*u + m0`; the modulus must be irreducible.
    pub fn quadratic(p: u32, m0: u32, m1: u32) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        let (m0, m1) = (m0 % p, m1 % p);
        // irreducible iff no root in F_p
        let has_root = (0..p).any(|x| (x * x % p + p * p - m1 * x % p - m0).is_multiple_of(p));
        if has_root {
            return Err(ExactError::ReducibleModulus { p, m0, m1 });
        }
        Ok(GfField { p, deg: 2, m0, m1 })
    }

    /// `F_9` presented as `F_3[u]` with `u^2 = u + 1`.
    pub fn f9() -> Self {
        GfField::quadratic(3, 1, 1).expect("u^2 - u - 1 is irreducible mod 3")
    }

    pub fn f2() -> Self {
        GfField::prime(2).expect("2 is prime")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.deg
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.deg as u32)
    }

    pub fn elem(&self, c0: i64, c1: i64) -> Gf {
        let p = self.p as i64;
        let c1 = if self.deg == 1 { 0 } else { c1.rem_euclid(p) };
        Gf {
            field: *self,
            c0: c0.rem_euclid(p) as u32,
            c1: c1 as u32,
        }
    }

    pub fn zero(&self) -> Gf {
        self.elem(0, 0)
    }

    pub fn one(&self) -> Gf {
        self.elem(1, 0)
    }

    /// The adjoined generator `u` (only for quadratic fields).
    pub fn gen(&self) -> Gf {
        assert_eq!(self.deg, 2, "prime field has no adjoined generator");
        self.elem(0, 1)
    }

    pub fn elements(&self) -> Vec<Gf> {
        let top = if self.deg == 2 { self.p } else { 1 };
        (0..top)
            .flat_map(|c1| (0..self.p).map(move |c0| (c0, c1)))
            .map(|(c0, c1)| self.elem(c0 as i64, c1 as i64))
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf {
    field: GfField,
    c0: u32,
    c1: u32,
}

impl Gf {
    pub fn field(&self) -> GfField {
        self.field
    }

    pub fn coords(&self) -> (u32, u32) {
        (self.c0, self.c1)
    }

    fn check(&self, rhs: &Gf) {
        assert_eq!(self.field, rhs.field, "mixing elements of different finite fields");
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf {
    /// Prints like the printed matrices: `2`, `u`, `2u+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c1, self.c0) {
            (0, c0) => write!(f, "{c0}"),
            (c1, c0) => {
                if c1 == 1 {
                    write!(f, "u")?;
                } else {
                    write!(f, "{c1}u")?;
                }
                if c0 != 0 {
                    write!(f, "+{c0}")?;
                }
                Ok(())
            }
        }
    }
}

impl RingOps for Gf {
    fn add_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let p = self.field.p;
        Gf {
            field: self.field,
            c0: (self.c0 + rhs.c0) % p,
            c1: (self.c1 + rhs.c1) % p,
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let p = self.field.p as u64;
        let (a0, a1, b0, b1) = (
            self.c0 as u64,
            self.c1 as u64,
            rhs.c0 as u64,
            rhs.c1 as u64,
        );
        // (a0 + a1 u)(b0 + b1 u) with u^2 = m1 u + m0
        let hi = a1 * b1 % p;
        let c0 = (a0 * b0 + hi * self.field.m0 as u64) % p;
        let c1 = (a0 * b1 + a1 * b0 + hi * self.field.m1 as u64) % p;
        Gf {
            field: self.field,
            c0: c0 as u32,
            c1: c1 as u32,
        }
    }
    fn neg_ref(&self) -> Self {
        let p = self.field.p;
        Gf {
            field: self.field,
            c0: (p - self.c0) % p,
            c1: (p - self.c1) % p,
        }
    }
    fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
}

impl Scalar for Gf {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        self.field.elem(v, 0)
    }
    fn inv(&self) -> Option<Self> {
        if RingOps::is_zero(self) {
            return None;
        }
        // x^(q-2)
        Some(self.pow(self.field.order() as u64 - 2))
    }
}

impl Conjugate for Gf {
    /// Identity: finite fields carry no complex conjugation.
    fn conj(&self) -> Self {
        *self
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        self.add_ref(&rhs)
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self.sub_ref(&rhs)
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        self.mul_ref(&rhs)
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_arithmetic() {
        let f = GfField::f9();
        let u = f.gen();
        assert_eq!(u * u, u + f.one());
        assert_eq!(f.elements().len(), 9);
        for x in f.elements() {
            if !RingOps::is_zero(&x) {
                assert!((x * x.inv().unwrap()).is_one());
                assert!(x.pow(8).is_one());
            }
        }
        assert_eq!(f.elem(1, 2).to_string(), "2u+1");
        assert_eq!(f.elem(2, 0).to_string(), "2");
    }

    #[test]
    fn reducible_modulus_rejected() {
        // u^2 = 1 has roots
        assert!(matches!(
            GfField::quadratic(3, 1, 0),
            Err(ExactError::ReducibleModulus { .. })
        ));
        assert!(matches!(GfField::prime(9), Err(ExactError::NotPrime(9))));
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixing_fields_panics() {
        let a = GfField::quadratic(3, 1, 1).unwrap().one();
        let b = GfField::quadratic(3, 2, 0).unwrap().one();
        let _ = a + b;
    }

    #[test]
    fn f2_is_tiny() {
        let f = GfField::f2();
        assert_eq!(f.one() + f.one(), f.zero());
        assert_eq!(f.order(), 2);
    }
}
