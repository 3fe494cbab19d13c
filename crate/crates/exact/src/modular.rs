//! Reduction of cyclotomic numbers modulo a split prime.
//!
//! For a prime `l = 1 (mod N)` and an element `r` of exact order `N` in
//! `F_l`, `zeta_N -> r` extends to a ring homomorphism from the
//! `l`-integral part of `Q(zeta_N)` onto `F_l`. Used as a fast fingerprint;
//! callers that rely on it for exact conclusions must check injectivity on
//! the finite set they reduce.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cyclotomic::Cyclotomic;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularEmbedding {
    n: u32,
    ell: u64,
    root: u64,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ModularEmbedding {
    /// The `skip`-th prime `l = 1 (mod n)` above `2^30`, with a root of
    /// exact order `n`.
    pub fn new(n: u32, skip: usize) -> Self {
        let n64 = n as u64;
        let start = (1u64 << 30) / n64 + 1;
        let ell = (start..)
            .map(|k| k * n64 + 1)
            .filter(|&l| is_prime(l))
            .nth(skip)
            .expect("primes in arithmetic progressions are infinite");
        let qs = prime_factors(n64);
        let root = (2..ell)
            .map(|g| powmod(g, (ell - 1) / n64, ell))
            .find(|&r| qs.iter().all(|&q| powmod(r, n64 / q, ell) != 1))
            .expect("F_l* is cyclic of order divisible by n");
        ModularEmbedding { n, ell, root }
    }

    pub fn modulus(&self) -> u64 {
        self.ell
    }

    fn reduce_int(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.ell);
        let r = ((v % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }

    pub fn reduce_rational(&self, q: &Rational) -> Option<u64> {
        let d = self.reduce_int(q.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_int(q.numer());
        Some(mulmod(n, powmod(d, self.ell - 2, self.ell), self.ell))
    }

    /// Image of `z`; `None` when a denominator is divisible by `l`. The
    /// conductor of `z` must divide `n`.
    pub fn reduce(&self, z: &Cyclotomic) -> Option<u64> {
        let c = z.conductor();
        assert!(self.n.is_multiple_of(c), "conductor {c} does not divide {}", self.n);
        let r = powmod(self.root, (self.n / c) as u64, self.ell);
        let (num, den) = z.parts();
        let dinv = {
            let d = self.reduce_int(den);
            if d == 0 {
                return None;
            }
            powmod(d, self.ell - 2, self.ell)
        };
        let mut acc = 0u64;
        let mut rk = 1u64;
        for a in num {
            acc = (acc + mulmod(self.reduce_int(a), rk, self.ell)) % self.ell;
            rk = mulmod(rk, r, self.ell);
        }
        Some(mulmod(acc, dinv, self.ell))
    }

    /// Projective fingerprint: the reduced vector scaled so its first nonzero
    /// entry is 1.
    pub fn projective_key(&self, v: &[Cyclotomic]) -> Option<Vec<u64>> {
        let mut out: Vec<u64> = v.iter().map(|z| self.reduce(z)).collect::<Option<_>>()?;
        let lead = *out.iter().find(|&&x| x != 0)?;
        let inv = powmod(lead, self.ell - 2, self.ell);
        for x in &mut out {
            *x = mulmod(*x, inv, self.ell);
        }
        Some(out)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.ell)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.ell
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        powmod(a, self.ell - 2, self.ell)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::i_sqrt7;
    use crate::rational::rat;
    use crate::scalar::RingOps;

    #[test]
    fn reduction_is_a_ring_map() {
        let e = ModularEmbedding::new(84, 0);
        assert_eq!(e.modulus() % 84, 1);
        let g = i_sqrt7();
        let g2 = g.mul_ref(&g);
        let m = e.ell;
        assert_eq!(e.reduce(&g2), Some((m - 7) % m));
        let a = Cyclotomic::zeta_pow(12, 5).add_ref(&Cyclotomic::from_rational(&rat(2, 3), 12));
        let b = g.embed(84);
        let lhs = e.reduce(&a.mul_ref(&b)).unwrap();
        assert_eq!(lhs, e.mul(e.reduce(&a).unwrap(), e.reduce(&b).unwrap()));
        assert_eq!(e.reduce(&Cyclotomic::zeta_pow(84, 84)), Some(1));
    }
}
