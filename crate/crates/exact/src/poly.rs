//! Sparse multivariate polynomials over an exact scalar.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::ExactError;
use crate::matrix::Matrix;
use crate::scalar::{RingOps, Scalar};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<S> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// `c * x^exps`.
    pub fn monomial(exps: Monomial, c: S) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    /// The variable `x_i`; `one` fixes the scalar context.
    pub fn var(nvars: usize, i: usize, one: S) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, one)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, S)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&S> {
        self.terms.get(e)
    }

    /// Any stored coefficient; handy as a context for constants.
    pub fn some_coeff(&self) -> Option<&S> {
        self.terms.values().next()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        assert_eq!(weights.len(), self.nvars);
        self.terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum())
            .max()
    }

    /// True iff every term has total degree exactly `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.mul_ref(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: HashMap<Monomial, S> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.mul_ref(cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add_ref(&c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `self^k`; `one` supplies the scalar context for `k = 0`.
    pub fn pow(&self, k: u32, one: &S) -> Self {
        let mut acc = Self::constant(self.nvars, one.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.mul_ref(&c.from_i64_like(e[i] as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn map_coeffs<T: Scalar, F: Fn(&S) -> T>(&self, f: F) -> MultiPoly<T> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn eval(&self, point: &[S]) -> Option<S> {
        assert_eq!(point.len(), self.nvars);
        let mut acc: Option<S> = None;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.mul_ref(&x.pow(k as u64));
                }
            }
            acc = Some(match acc {
                Some(a) => a.add_ref(&t),
                None => t,
            });
        }
        acc.or_else(|| point.first().map(|x| x.zero_like()))
    }

    /// Replaces `x_i` by `images[i]` and expands.
    pub fn substitute(&self, images: &[MultiPoly<S>]) -> Result<Self, ExactError> {
        if images.len() != self.nvars {
            return Err(ExactError::DimensionMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target_vars = images.first().map_or(self.nvars, |p| p.nvars);
        let Some(one) = self.some_coeff().map(|c| c.one_like()) else {
            return Ok(Self::zero(target_vars));
        };
        // powers[i][k] = images[i]^k, grown on demand
        let mut powers: Vec<Vec<MultiPoly<S>>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(p.nvars, one.clone())])
            .collect();
        // products of leading factors, keyed by exponent prefix
        let mut prefix_cache: HashMap<Monomial, MultiPoly<S>> = HashMap::new();
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut prod = MultiPoly::constant(target_vars, one.clone());
            for j in 0..e.len() {
                let key = e[..=j].to_vec();
                if let Some(p) = prefix_cache.get(&key) {
                    prod = p.clone();
                    continue;
                }
                let k = e[j] as usize;
                while powers[j].len() <= k {
                    let next = powers[j].last().unwrap().mul(&images[j]);
                    powers[j].push(next);
                }
                prod = prod.mul(&powers[j][k]);
                prefix_cache.insert(key, prod.clone());
            }
            for (m, v) in prod.terms {
                out.add_term(m, v.mul_ref(c));
            }
        }
        Ok(out)
    }

    /// `self o M`: the polynomial `x -> self(M x)`.
    pub fn substitute_linear(&self, m: &Matrix<S>) -> Result<Self, ExactError> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(ExactError::DimensionMismatch {
                expected: self.nvars,
                got: m.rows(),
            });
        }
        let images: Vec<MultiPoly<S>> = (0..self.nvars)
            .map(|i| {
                MultiPoly::from_terms(
                    self.nvars,
                    (0..self.nvars).map(|j| {
                        let mut e = vec![0; self.nvars];
                        e[j] = 1;
                        (e, m.get(i, j).clone())
                    }),
                )
            })
            .collect();
        self.substitute(&images)
    }

    /// Divides every coefficient by `c`.
    pub fn div_scalar(&self, c: &S) -> Option<Self> {
        c.inv().map(|ci| self.scale(&ci))
    }

    /// One line per term: exponents, then the coefficient.
    pub fn export_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                format!("{} : {}", exps.join(" "), c)
            })
            .collect()
    }
}

impl<S: Scalar> RingOps for MultiPoly<S> {
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, d)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, Rational};

    fn x(i: usize) -> MultiPoly<Rational> {
        MultiPoly::var(3, i, int(1))
    }

    fn klein() -> MultiPoly<Rational> {
        let one = int(1);
        x(0).pow(3, &one)
            .mul(&x(1))
            .add(&x(1).pow(3, &one).mul(&x(2)))
            .add(&x(2).pow(3, &one).mul(&x(0)))
    }

    #[test]
    fn identity_substitution_is_trivial() {
        let f = klein();
        let id = Matrix::identity(3, &int(1));
        assert_eq!(f.substitute_linear(&id).unwrap(), f);
    }

    #[test]
    fn cyclic_permutation_preserves_the_quartic() {
        let f = klein();
        let mut j = Matrix::filled(3, 3, int(0));
        // x1 -> x3, x2 -> x1, x3 -> x2
        j.set(0, 2, int(1));
        j.set(1, 0, int(1));
        j.set(2, 1, int(1));
        assert_eq!(f.substitute_linear(&j).unwrap(), f);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let f = klein();
        let id = Matrix::identity(2, &int(1));
        assert!(f.substitute_linear(&id).is_err());
    }

    #[test]
    fn derivatives_and_degrees() {
        let f = klein();
        assert_eq!(f.degree(), Some(4));
        assert!(f.is_homogeneous_of(4));
        let g = f.derivative(0);
        // 3 x1^2 x2 + x3^3
        assert_eq!(g.coeff(&[2, 1, 0]), Some(&int(3)));
        assert_eq!(g.coeff(&[0, 0, 3]), Some(&int(1)));
        assert_eq!(g.num_terms(), 2);
        assert_eq!(f.weighted_degree(&[2, 3, 7]), Some(23));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = x(0).sub(&x(0));
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }
}
