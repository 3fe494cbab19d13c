//! The cyclotomic field `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` of
//! `Q[z]/(Phi_N)`, with integer numerators over one common positive
//! denominator. The representation is canonical, so structural equality is
//! field equality (for a fixed conductor).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ExactError;
use crate::rational::Rational;
use crate::scalar::{Conjugate, RingOps, Scalar};

/// Precomputed data for one conductor.
#[derive(Debug)]
pub struct CycloCtx {
    n: u32,
    phi: usize,
    /// Coefficients of `Phi_N`, lowest degree first; monic of degree `phi`.
    modulus: Vec<i64>,
    /// `z^k` reduced into the power basis, for `0 <= k < N`.
    powers: Vec<Vec<i64>>,
}

impl CycloCtx {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        num = exact_div(&num, &den);
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn build_ctx(n: u32) -> CycloCtx {
    let modulus = cyclotomic_polynomial(n);
    let phi = modulus.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by z and reduce
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if top != 0 {
            for j in 0..phi {
                next[j] -= top * modulus[j];
            }
        }
        cur = next;
    }
    CycloCtx {
        n,
        phi,
        modulus,
        powers,
    }
}

/// Shared context for conductor `n` (built once, then cached for the
/// lifetime of the process).
pub fn ctx(n: u32) -> &'static CycloCtx {
    static CACHE: OnceLock<RwLock<HashMap<u32, &'static CycloCtx>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return c;
    }
    let built: &'static CycloCtx = Box::leak(Box::new(build_ctx(n)));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert(built)
}

#[derive(Clone)]
pub struct Cyclotomic {
    ctx: &'static CycloCtx,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// Builds the reduced element `sum_j coeffs[j] * z^j` of `Q(zeta_n)`.
///
/// Exponents at or beyond `phi(n)` are folded back with `Phi_n`; exponents
/// beyond `n` wrap around, since `z^n = 1`.
pub fn cyc_make(coeffs: &[Rational], n: u32) -> Result<Cyclotomic, ExactError> {
    if n == 0 {
        return Err(ExactError::ZeroConductor);
    }
    let c = ctx(n);
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut num = vec![BigInt::zero(); c.phi];
    for (j, q) in coeffs.iter().enumerate() {
        if Zero::is_zero(q) {
            continue;
        }
        let scaled = q.numer() * (&den / q.denom());
        for (slot, &pj) in num.iter_mut().zip(&c.powers[j % n as usize]) {
            if pj != 0 {
                *slot += &scaled * pj;
            }
        }
    }
    Ok(Cyclotomic::from_parts(c, num, den))
}

impl Cyclotomic {
    fn from_parts(ctx: &'static CycloCtx, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = Cyclotomic { ctx, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(n: u32) -> Self {
        let c = ctx(n);
        Cyclotomic {
            ctx: c,
            num: vec![BigInt::zero(); c.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(&Rational::one(), n)
    }

    pub fn from_int(v: i64, n: u32) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)), n)
    }

    pub fn from_rational(q: &Rational, n: u32) -> Self {
        let c = ctx(n);
        let mut num = vec![BigInt::zero(); c.phi];
        num[0] = q.numer().clone();
        Cyclotomic::from_parts(c, num, q.denom().clone())
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let c = ctx(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            ctx: c,
            num: c.powers[k].iter().map(|&v| BigInt::from(v)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.ctx.n
    }

    pub fn degree(&self) -> usize {
        self.ctx.phi
    }

    /// Reduced rational coordinates in the power basis.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The common denominator and integer numerators.
    pub fn parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Applies the automorphism `z -> z^k` (requires `gcd(k, n) = 1`).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.ctx.n as i64;
        assert_eq!(k.rem_euclid(n).gcd(&n), 1, "not a Galois exponent");
        let mut num = vec![BigInt::zero(); self.ctx.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j as i64 * k).rem_euclid(n) as usize;
            for (slot, &pj) in num.iter_mut().zip(&self.ctx.powers[e]) {
                if pj != 0 {
                    *slot += c * pj;
                }
            }
        }
        Cyclotomic::from_parts(self.ctx, num, self.den.clone())
    }

    /// Image under the inclusion `Q(zeta_n) -> Q(zeta_m)`, `zeta_n = zeta_m^(m/n)`.
    pub fn embed(&self, m: u32) -> Self {
        let n = self.ctx.n;
        assert!(m.is_multiple_of(n), "cannot embed Q(zeta_{n}) into Q(zeta_{m})");
        if m == n {
            return self.clone();
        }
        let target = ctx(m);
        let step = (m / n) as usize;
        let mut num = vec![BigInt::zero(); target.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &pj) in num.iter_mut().zip(&target.powers[j * step]) {
                if pj != 0 {
                    *slot += c * pj;
                }
            }
        }
        Cyclotomic::from_parts(target, num, self.den.clone())
    }

    /// Brings two operands to a common conductor.
    fn aligned(a: &Self, b: &Self) -> Option<(Self, Self)> {
        if a.ctx.n == b.ctx.n {
            return None;
        }
        let m = a.ctx.n.lcm(&b.ctx.n);
        Some((a.embed(m), b.embed(m)))
    }

    fn add_same(&self, rhs: &Self, negate: bool) -> Self {
        let num: Vec<BigInt> = if self.den == rhs.den {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| {
                    let l = a * &rhs.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == rhs.den {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        Cyclotomic::from_parts(self.ctx, num, den)
    }

    fn mul_same(&self, rhs: &Self) -> Self {
        let phi = self.ctx.phi;
        if self.is_zero_elem() || rhs.is_zero_elem() {
            return Cyclotomic::zero(self.ctx.n);
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let modulus = &self.ctx.modulus;
        for k in (phi..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &mj) in modulus[..phi].iter().enumerate() {
                if mj != 0 {
                    prod[k - phi + j] -= &c * mj;
                }
            }
        }
        prod.truncate(phi);
        Cyclotomic::from_parts(self.ctx, prod, &self.den * &rhs.den)
    }

    fn is_zero_elem(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn inv_same(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyclotomic::from_rational(&q.recip(), self.ctx.n));
        }
        // Solve (X * y) = den * e_0 where X = den * self has integer coordinates.
        let phi = self.ctx.phi;
        let numer_elem = Cyclotomic {
            ctx: self.ctx,
            num: self.num.clone(),
            den: BigInt::one(),
        };
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi + 1]; phi];
        let mut col = numer_elem;
        let z = Cyclotomic::zeta_pow(self.ctx.n, 1);
        for j in 0..phi {
            for (i, row) in rows.iter_mut().enumerate() {
                row[j] = Rational::from_integer(col.num[i].clone());
            }
            if j + 1 < phi {
                col = col.mul_same(&z);
            }
        }
        rows[0][phi] = Rational::from_integer(self.den.clone());
        let sol = solve_square(rows)?;
        let den = sol.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = sol.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Some(Cyclotomic::from_parts(self.ctx, num, den))
    }

    /// Approximate complex value at `zeta_n = exp(2 pi i / n)`; for tests and
    /// diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.ctx.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// True iff the element is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Parses the `"[N; c0, c1, ...]"` serialization.
    pub fn parse(s: &str) -> Result<Self, ExactError> {
        let err = || ExactError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(err)?;
        let (n, rest) = body.split_once(';').ok_or_else(err)?;
        let n: u32 = n.trim().parse().map_err(|_| err())?;
        let coeffs = rest
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(crate::rational::parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        cyc_make(&coeffs, n)
    }
}

/// Gauss-Jordan on an augmented square system; `None` if singular.
fn solve_square(mut rows: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = rows.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !Zero::is_zero(&rows[r][col]))?;
        rows.swap(col, piv);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut().skip(col) {
            *v = &*v * &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || Zero::is_zero(&row[col]) {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !Zero::is_zero(p) {
                    *v = &*v - &f * p;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.ctx.n)?;
        for (j, c) in self.coeffs().iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, " {c}")?;
        }
        write!(f, "]")
    }
}

impl RingOps for Cyclotomic {
    fn add_ref(&self, rhs: &Self) -> Self {
        match Cyclotomic::aligned(self, rhs) {
            Some((a, b)) => a.add_same(&b, false),
            None => self.add_same(rhs, false),
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        match Cyclotomic::aligned(self, rhs) {
            Some((a, b)) => a.add_same(&b, true),
            None => self.add_same(rhs, true),
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        match Cyclotomic::aligned(self, rhs) {
            Some((a, b)) => a.mul_same(&b),
            None => self.mul_same(rhs),
        }
    }
    fn neg_ref(&self) -> Self {
        Cyclotomic {
            ctx: self.ctx,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.is_zero_elem()
    }
}

impl Scalar for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.ctx.n)
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.ctx.n)
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Cyclotomic::from_int(v, self.ctx.n)
    }
    fn inv(&self) -> Option<Self> {
        self.inv_same()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }
}

impl Conjugate for Cyclotomic {
    fn conj(&self) -> Self {
        self.galois(self.ctx.n as i64 - 1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$via(rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$via(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$via(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

/// The quadratic Gauss sum `z + z^2 + z^4 - z^3 - z^5 - z^6` in `Q(zeta_7)`,
/// which equals `i*sqrt(7)` at `z = exp(2 pi i / 7)`.
pub fn i_sqrt7() -> Cyclotomic {
    let coeffs: Vec<Rational> = [0, 1, 1, -1, 1, -1, -1]
        .iter()
        .map(|&v| Rational::from_integer(BigInt::from(v)))
        .collect();
    cyc_make(&coeffs, 7).expect("conductor 7")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(7), vec![1; 7]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in [7u32, 12, 14, 21, 28, 35, 42, 56, 84] {
            let deg = cyclotomic_polynomial(n).len() - 1;
            let phi = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(deg, phi, "n = {n}");
        }
    }

    #[test]
    fn zero_conductor_rejected() {
        assert_eq!(cyc_make(&[int(1)], 0), Err(ExactError::ZeroConductor));
    }

    #[test]
    fn zeta7_to_the_seventh_is_one() {
        let mut c = vec![int(0); 8];
        c[7] = int(1);
        assert_eq!(cyc_make(&c, 7).unwrap(), Cyclotomic::one(7));
        let z = Cyclotomic::zeta_pow(7, 1);
        assert!(z.pow(7).is_one());
    }

    #[test]
    fn sum_of_seventh_roots_vanishes() {
        let x = cyc_make(&ints(&[1, 1, 1, 1, 1, 1, 1]), 7).unwrap();
        assert!(RingOps::is_zero(&x));
    }

    #[test]
    fn gauss_sum_squares_to_minus_seven() {
        let g = i_sqrt7();
        assert_eq!(&g * &g, Cyclotomic::from_int(-7, 7));
        let (re, im) = g.to_complex_f64();
        assert!(re.abs() < 1e-12 && (im - 7f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn conjugation() {
        assert_eq!(
            Cyclotomic::from_rational(&rat(5, 3), 7).conj(),
            Cyclotomic::from_rational(&rat(5, 3), 7)
        );
        assert_eq!(Cyclotomic::zeta_pow(7, 1).conj(), Cyclotomic::zeta_pow(7, 6));
        let g = i_sqrt7();
        assert_eq!(g.conj(), -&g);
    }

    #[test]
    fn make_is_idempotent() {
        let x = cyc_make(&ints(&[3, 0, 0, 0, 0, 0, 0, 2, 5]), 7).unwrap();
        let again = cyc_make(&x.coeffs(), 7).unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn inverse_and_embedding() {
        let x = cyc_make(&[int(2), rat(1, 3), int(0), int(-1)], 12).unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let big = x.embed(84);
        assert_eq!(big.conductor(), 84);
        assert!((&big * &y.embed(84)).is_one());
        // mixed conductors are aligned through the lcm
        let s = &Cyclotomic::zeta_pow(7, 1) * &Cyclotomic::zeta_pow(3, 1);
        assert_eq!(s, Cyclotomic::zeta_pow(21, 3 + 7));
        assert_eq!(Cyclotomic::zero(5).inv(), None);
    }

    #[test]
    fn serialization_round_trip() {
        let x = cyc_make(&[rat(1, 2), int(0), rat(-3, 4)], 12).unwrap();
        assert_eq!(x.to_string(), "[12; 1/2, 0, -3/4, 0]");
        assert_eq!(Cyclotomic::parse(&x.to_string()).unwrap(), x);
        assert!(Cyclotomic::parse("12; 1").is_err());
    }

    #[test]
    fn i_in_q_zeta28_squares_to_minus_one() {
        let i = Cyclotomic::zeta_pow(28, 7);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1, 28));
    }
}
