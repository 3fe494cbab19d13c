use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ExactError;
use crate::scalar::{Conjugate, RingOps, Scalar};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let err = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// `1/x`, with `1/inf = 0` encoded by `None`.
pub fn recip_or_zero(x: Option<u32>) -> Rational {
    match x {
        Some(v) => rat(1, v as i64),
        None => Rational::zero(),
    }
}

/// Image of `q` in `Z/m`, or `None` when `m` divides the denominator.
pub fn reduce_mod(q: &Rational, m: u32) -> Option<u32> {
    let mb = BigInt::from(m);
    let residue = |v: &BigInt| -> u64 {
        let r = ((v % &mb) + &mb) % &mb;
        r.to_u64().expect("residue below modulus")
    };
    let (n, d) = (residue(q.numer()), residue(q.denom()));
    let m64 = m as u64;
    let dinv = (1..m64).find(|x| d * x % m64 == 1)?;
    Some((n * dinv % m64) as u32)
}

impl RingOps for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        int(v)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Conjugate for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("297/448").unwrap(), rat(297, 448));
        assert_eq!(parse_rational("-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rat(297, 448).to_string(), "297/448");
    }

    #[test]
    fn reduced_and_positive_denominator() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn reduction_mod_small_primes() {
        assert_eq!(reduce_mod(&rat(-1, 2), 3), Some(1));
        assert_eq!(reduce_mod(&rat(5, 1), 2), Some(1));
        assert_eq!(reduce_mod(&rat(1, 2), 2), None);
    }
}
