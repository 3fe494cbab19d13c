//! Rigorous rational enclosures of `cos`, `sin` and `pi`, used to certify the
//! sign of real cyclotomic numbers.
//!
//! All series are evaluated in binary fixed point with directed rounding, so
//! every returned interval provably contains the true value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::rational::Rational;
use crate::scalar::{Conjugate, RingOps};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().cloned().expect("four candidates");
        let hi = cands.iter().max().cloned().expect("four candidates");
        Interval { lo, hi }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// `Some(+1)` / `Some(-1)` when the interval excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }
}

fn fixed_to_interval(lo: BigInt, hi: BigInt, bits: u32) -> Interval {
    let den = BigInt::one() << bits;
    Interval::new(Rational::new(lo, den.clone()), Rational::new(hi, den))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

/// Fixed-point enclosure of `arctan(1/q)` at scale `2^bits`.
fn arctan_recip(q: u32, bits: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut qpow = BigInt::from(q);
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    let mut k: u64 = 0;
    loop {
        let den = &qpow * BigInt::from(2 * k + 1);
        let t_lo = one.div_floor(&den);
        let t_hi = ceil_div(&one, &den);
        if t_hi <= BigInt::one() {
            // tail of an alternating decreasing series is bounded by this term
            lo -= &t_hi;
            hi += &t_hi;
            return (lo, hi);
        }
        if k.is_multiple_of(2) {
            lo += &t_lo;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &t_lo;
        }
        qpow *= &q2;
        k += 1;
    }
}

/// Enclosure of `pi` with roughly `bits` bits of precision (Machin's formula).
pub fn pi_enclosure(bits: u32) -> Interval {
    let w = bits + 16;
    let (a_lo, a_hi) = arctan_recip(5, w);
    let (b_lo, b_hi) = arctan_recip(239, w);
    let lo = BigInt::from(16) * a_lo - BigInt::from(4) * b_hi;
    let hi = BigInt::from(16) * a_hi - BigInt::from(4) * b_lo;
    fixed_to_interval(lo, hi, w)
}

/// Series enclosure of `cos x` (`odd = false`) or `sin x` (`odd = true`) at
/// the exact point `x = xf / 2^w`, `0 <= x <= 1`.
fn trig_series(xf: &BigInt, w: u32, odd: bool) -> (BigInt, BigInt) {
    let unit = BigInt::one() << w;
    let x2_lo = (xf * xf) >> w;
    let x2_hi = ceil_div(&(xf * xf), &unit);
    let (mut t_lo, mut t_hi) = if odd {
        (xf.clone(), xf.clone())
    } else {
        (unit.clone(), unit.clone())
    };
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    let mut k: u64 = 0;
    loop {
        if t_hi <= BigInt::one() && k > 0 {
            lo -= &t_hi;
            hi += &t_hi;
            return (lo, hi);
        }
        if k.is_multiple_of(2) {
            lo += &t_lo;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &t_lo;
        }
        let base = if odd { 2 * k + 2 } else { 2 * k + 1 };
        let d = BigInt::from(base * (base + 1));
        t_lo = ((&t_lo * &x2_lo) >> w).div_floor(&d);
        t_hi = ceil_div(&ceil_div(&(&t_hi * &x2_hi), &unit), &d);
        k += 1;
    }
}

/// Enclosures of `cos(2 pi j / n)` and `sin(2 pi j / n)`.
pub fn cos_sin_turn(j: i64, n: u32, bits: u32) -> (Interval, Interval) {
    assert!(n > 0, "zero denominator");
    let n = n as i64;
    let mut k = j.rem_euclid(n);
    // reflect to the upper half turn
    let mut sin_sign = 1;
    if 2 * k > n {
        k = n - k;
        sin_sign = -1;
    }
    // f = k/n in [0, 1/2]; reflect to [0, 1/4]
    let mut cos_sign = 1;
    let mut num = Rational::new(k.into(), n.into());
    let quarter = Rational::new(1.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    if num > quarter {
        num = &half - &num;
        cos_sign = -1;
    }
    // f in [0, 1/4]; above 1/8 swap cos and sin
    let eighth = Rational::new(1.into(), 8.into());
    let swap = num > eighth;
    if swap {
        num = &quarter - &num;
    }
    let w = bits + 16;
    let pi = pi_enclosure(w);
    let two = Rational::from_integer(2.into());
    let x_lo = &two * &num * &pi.lo;
    let x_hi = &two * &num * &pi.hi;
    let unit = BigInt::one() << w;
    let xf_lo = (x_lo * Rational::from_integer(unit.clone())).floor().to_integer();
    let xf_hi = (x_hi * Rational::from_integer(unit)).ceil().to_integer();
    // cos decreases and sin increases on [0, pi/4]
    let c = {
        let (lo, _) = trig_series(&xf_hi, w, false);
        let (_, hi) = trig_series(&xf_lo, w, false);
        fixed_to_interval(lo, hi, w)
    };
    let s = {
        let (lo, _) = trig_series(&xf_lo.max(BigInt::zero()), w, true);
        let (_, hi) = trig_series(&xf_hi, w, true);
        fixed_to_interval(lo.max(BigInt::zero()), hi, w)
    };
    let (c, s) = if swap { (s, c) } else { (c, s) };
    let c = if cos_sign < 0 { c.neg() } else { c };
    let s = if sin_sign < 0 { s.neg() } else { s };
    (c, s)
}

/// Enclosures of the real and imaginary parts of `z`.
pub fn enclose(z: &Cyclotomic, bits: u32) -> (Interval, Interval) {
    let n = z.conductor();
    let mut re = Interval::zero();
    let mut im = Interval::zero();
    for (k, a) in z.coeffs().iter().enumerate() {
        if Zero::is_zero(a) {
            continue;
        }
        let (c, s) = cos_sin_turn(k as i64, n, bits);
        re = re.add(&c.scale(a));
        im = im.add(&s.scale(a));
    }
    (re, im)
}

pub const DEFAULT_START_BITS: u32 = 64;
pub const DEFAULT_MAX_BITS: u32 = 1 << 14;

/// Certified sign of a real cyclotomic number: exact zero test, then
/// interval refinement with doubling precision. `None` if `z` is not real
/// or the precision cap is reached.
pub fn certified_sign(z: &Cyclotomic) -> Option<i32> {
    certified_sign_with(z, DEFAULT_START_BITS, DEFAULT_MAX_BITS)
}

pub fn certified_sign_with(z: &Cyclotomic, start: u32, cap: u32) -> Option<i32> {
    if z.is_zero() {
        return Some(0);
    }
    if z.conj() != *z {
        return None;
    }
    let mut bits = start.max(8);
    while bits <= cap {
        if let Some(s) = enclose(z, bits).0.sign() {
            return Some(s);
        }
        bits *= 2;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn pi_digits() {
        let pi = pi_enclosure(200);
        assert!(!pi.contains(&rat(314159265, 100000000)));
        assert!(pi.lo > rat(3141592653, 1000000000));
        assert!(pi.hi < rat(3141592654, 1000000000));
        assert!(pi.width() < Rational::new(1.into(), BigInt::one() << 190));
    }

    #[test]
    fn special_angles() {
        // cos(2pi/6) = 1/2, sin(2pi/4) = 1
        let (c, _) = cos_sin_turn(1, 6, 100);
        assert!(c.contains(&rat(1, 2)));
        let (c, s) = cos_sin_turn(1, 4, 100);
        assert!(c.contains(&rat(0, 1)));
        assert!(s.contains(&rat(1, 1)));
        let (c, s) = cos_sin_turn(5, 8, 100);
        assert_eq!(c.sign(), Some(-1));
        assert_eq!(s.sign(), Some(-1));
        let (c, s) = cos_sin_turn(-1, 12, 100);
        assert_eq!(c.sign(), Some(1));
        assert_eq!(s.sign(), Some(-1));
        assert!(s.contains(&rat(-1, 2)));
    }

    #[test]
    fn float_agreement() {
        for n in [5u32, 7, 12, 28, 84] {
            for j in 0..n as i64 {
                let (c, s) = cos_sin_turn(j, n, 64);
                let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                let (cl, ch): (f64, f64) = (to_f64(&c.lo), to_f64(&c.hi));
                assert!(cl - 1e-12 <= t.cos() && t.cos() <= ch + 1e-12, "cos {j}/{n}");
                let (sl, sh) = (to_f64(&s.lo), to_f64(&s.hi));
                assert!(sl - 1e-12 <= t.sin() && t.sin() <= sh + 1e-12, "sin {j}/{n}");
            }
        }
    }

    fn to_f64(q: &Rational) -> f64 {
        use num_traits::ToPrimitive;
        q.to_f64().unwrap()
    }

    #[test]
    fn signs_of_real_cyclotomics() {
        let z = Cyclotomic::zeta_pow(7, 1);
        let re2 = z.add_ref(&z.conj()); // 2 cos(2pi/7) > 0
        assert_eq!(certified_sign(&re2), Some(1));
        assert_eq!(certified_sign(&re2.neg_ref()), Some(-1));
        assert_eq!(certified_sign(&Cyclotomic::zero(7)), Some(0));
        assert_eq!(certified_sign(&z), None);
        // 2cos(2pi/7) - 1.2469796 changes sign around the true value
        let close = re2.sub_ref(&Cyclotomic::from_rational(&rat(12469796, 10000000), 7));
        assert_eq!(certified_sign(&close), Some(1));
    }
}
