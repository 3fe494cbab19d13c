//! The invariants `f`, `Delta`, `C`, `K` of the Klein group and the degree-21
//! relation expressing `K^2` through `f`, `Delta`, `C`.

use std::collections::BTreeMap;

use exact::rational::int;
use exact::{Cyclotomic, Matrix, MultiPoly, Rational, RingOps, Scalar};

use crate::error::{CertError, Result};
use crate::klein::CMat;

pub type QPoly = MultiPoly<Rational>;
pub type CPoly = MultiPoly<Cyclotomic>;

/// `x1^3 x2 + x2^3 x3 + x3^3 x1` as printed.
pub fn printed_quartic() -> QPoly {
    QPoly::from_terms(
        3,
        [vec![3, 1, 0], vec![0, 3, 1], vec![1, 0, 3]].map(|e| (e, int(1))),
    )
}

pub const PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// `pol(x_{s(0)}, x_{s(1)}, x_{s(2)})`.
pub fn permute_vars<S: Scalar>(pol: &MultiPoly<S>, s: [usize; 3]) -> MultiPoly<S> {
    MultiPoly::from_terms(
        3,
        pol.terms().map(|(e, c)| {
            let mut out = vec![0; 3];
            for i in 0..3 {
                out[s[i]] += e[i];
            }
            (out, c.clone())
        }),
    )
}

pub fn to_cyclotomic(pol: &QPoly, n: u32) -> CPoly {
    pol.map_coeffs(|q| Cyclotomic::from_rational(q, n))
}

/// Group average of `pol`.
pub fn reynolds(pol: &CPoly, group: &[CMat]) -> Result<CPoly> {
    let mut acc = CPoly::zero(3);
    for g in group {
        acc = acc.add(&pol.substitute_linear(g)?);
    }
    let n = group.first().map_or(7, |g| g.get(0, 0).conductor());
    Ok(acc.scale(&Cyclotomic::from_rational(&int(group.len() as i64).recip(), n)))
}

#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub f: QPoly,
    pub delta: QPoly,
    pub c_inv: QPoly,
    pub k_inv: QPoly,
    /// Monomial whose average produced `f`.
    pub seed: Vec<u32>,
    /// Candidates whose average vanished, in the order tried.
    pub vanished: Vec<Vec<u32>>,
    /// `s` with `f = printed(x_{s(0)}, x_{s(1)}, x_{s(2)})`, if any.
    pub relabeling: Option<[usize; 3]>,
    /// `Delta = det(H(f)) / delta_den`.
    pub delta_den: i64,
}

/// Normalization of `Delta` as printed next to the Hessian.
pub const DELTA_DEN_PRINTED: i64 = 9;
/// Classical normalization, under which the printed discriminant holds.
pub const DELTA_DEN_CLASSICAL: i64 = 54;

/// Printed coefficients of the discriminant, in [`ansatz_monomials`] order.
pub const PRINTED_DISCRIMINANT: [i64; 9] = [1, 1728, -88, 1008, 1088, -256, -60032, 22016, -2048];

fn to_rational_poly(pol: &CPoly) -> Option<QPoly> {
    let terms: Option<Vec<(Vec<u32>, Rational)>> =
        pol.terms().map(|(e, c)| c.as_rational().map(|q| (e.clone(), q))).collect();
    Some(QPoly::from_terms(3, terms?))
}

fn hessian(f: &QPoly) -> Vec<Vec<QPoly>> {
    let g = f.gradient();
    g.iter().map(|gi| gi.gradient()).collect()
}

/// Builds `f` by averaging `x1^3 x2`, then its variable permutations if the
/// average vanishes; the rest follows the Hessian / bordered Hessian /
/// Jacobian chain with the printed factors.
pub fn build_invariants(group: &[CMat]) -> Result<InvariantBasis> {
    build_invariants_with(group, DELTA_DEN_PRINTED)
}

pub fn build_invariants_with(group: &[CMat], delta_den: i64) -> Result<InvariantBasis> {
    let mut vanished = Vec::new();
    let mut found = None;
    for s in PERMUTATIONS {
        let mut e = vec![0u32; 3];
        e[s[0]] = 3;
        e[s[1]] = 1;
        let mono = CPoly::monomial(e.clone(), Cyclotomic::one(7));
        let avg = reynolds(&mono, group)?;
        if avg.is_zero() {
            vanished.push(e);
        } else {
            found = Some((e, avg));
            break;
        }
    }
    let (seed, avg) = found.ok_or(CertError::ZeroReynolds)?;
    let lead = avg.coeff(&seed).cloned().unwrap_or_else(|| avg.some_coeff().unwrap().clone());
    let f = to_rational_poly(&avg.div_scalar(&lead).expect("nonzero"))
        .ok_or_else(|| CertError::Structure("averaged quartic is not rational".into()))?;
    let printed = printed_quartic();
    let relabeling = PERMUTATIONS.into_iter().find(|&s| permute_vars(&printed, s) == f);

    let h = hessian(&f);
    let ninth = int(9).recip();
    let delta = Matrix::from_rows(h.clone()).det_cofactor()?.scale(&int(delta_den).recip());
    let gd = delta.gradient();
    let zero = QPoly::zero(3);
    let mut rows: Vec<Vec<QPoly>> = h
        .iter()
        .zip(&gd)
        .map(|(row, d)| {
            let mut r = row.clone();
            r.push(d.clone());
            r
        })
        .collect();
    let mut last = gd.clone();
    last.push(zero);
    rows.push(last);
    let c_inv = Matrix::from_rows(rows).det_cofactor()?.scale(&ninth);
    let jac = Matrix::from_rows(vec![f.gradient(), delta.gradient(), c_inv.gradient()]);
    let k_inv = jac.det_cofactor()?.scale(&int(14).recip());
    Ok(InvariantBasis {
        f,
        delta,
        c_inv,
        k_inv,
        seed,
        vanished,
        relabeling,
        delta_den,
    })
}

impl InvariantBasis {
    pub fn degrees(&self) -> [Option<u32>; 4] {
        [&self.f, &self.delta, &self.c_inv, &self.k_inv].map(|p| p.degree())
    }

    pub fn homogeneous(&self) -> bool {
        [(&self.f, 4), (&self.delta, 6), (&self.c_inv, 14), (&self.k_inv, 21)]
            .iter()
            .all(|(p, d)| p.is_homogeneous_of(*d))
    }

    /// One block per invariant: a header line, then `e1 e2 e3 : coeff`.
    pub fn export(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, p) in [("f", &self.f), ("Delta", &self.delta), ("C", &self.c_inv), ("K", &self.k_inv)] {
            out.push(format!("# {name} degree {} terms {}", p.degree().unwrap_or(0), p.num_terms()));
            out.extend(p.export_lines());
        }
        out
    }
}

/// `(element name, pol o g == expected)` per element, with `expected = sign * pol`.
pub fn verify_invariance(pol: &QPoly, elems: &[(&str, &CMat)], sign: i64) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for (name, g) in elems {
        let n = g.get(0, 0).conductor();
        let p = to_cyclotomic(pol, n);
        let expected = p.scale(&Cyclotomic::from_int(sign, n));
        out.push((name.to_string(), p.substitute_linear(g)? == expected));
    }
    Ok(out)
}

/// Exponents `(a, b, c)` with `2a + 3b + 7c = 21`, in the printed order of
/// the discriminant: `z3^3, z2^7, z1^2 z2 z3^2, ..., z1^9 z2`.
pub fn ansatz_monomials() -> Vec<[u32; 3]> {
    let mut out: Vec<[u32; 3]> = Vec::new();
    for c in 0..=3u32 {
        for b in 0..=7u32 {
            let rest = 21i64 - 3 * b as i64 - 7 * c as i64;
            if rest >= 0 && rest % 2 == 0 {
                out.push([(rest / 2) as u32, b, c]);
            }
        }
    }
    let printed: [[u32; 3]; 9] = [
        [0, 0, 3],
        [0, 7, 0],
        [2, 1, 2],
        [1, 4, 1],
        [4, 2, 1],
        [7, 0, 1],
        [3, 5, 0],
        [6, 3, 0],
        [9, 1, 0],
    ];
    out.sort_by_key(|m| printed.iter().position(|p| p == m).unwrap_or(usize::MAX));
    out
}

#[derive(Debug, Clone)]
pub struct DiscriminantExpression {
    pub monomials: Vec<[u32; 3]>,
    /// Raw solution: `K^2 = sum coeff * f^a Delta^b C^c`.
    pub raw: Vec<Rational>,
    /// Coefficient of `C^3`.
    pub sigma: Rational,
    /// `raw / sigma`.
    pub normalized: Vec<Rational>,
    pub equations: usize,
}

/// Solves `K^2 = sum x_i f^a Delta^b C^c` over the ansatz; the system must
/// have exactly one solution.
pub fn discriminant_expression(basis: &InvariantBasis) -> Result<DiscriminantExpression> {
    let monomials = ansatz_monomials();
    let one = int(1);
    let k2 = basis.k_inv.mul(&basis.k_inv);
    let pw = |p: &QPoly, k: u32| p.pow(k, &one);
    let columns: Vec<QPoly> = monomials
        .iter()
        .map(|&[a, b, c]| pw(&basis.f, a).mul(&pw(&basis.delta, b)).mul(&pw(&basis.c_inv, c)))
        .collect();
    let mut support: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
    for p in columns.iter().chain([&k2]) {
        for (e, _) in p.terms() {
            support.insert(e.clone(), ());
        }
    }
    let zero = int(0);
    let rows: Vec<Vec<Rational>> = support
        .keys()
        .map(|e| {
            let mut r: Vec<Rational> =
                columns.iter().map(|p| p.coeff(e).cloned().unwrap_or_else(|| zero.clone())).collect();
            r.push(k2.coeff(e).cloned().unwrap_or_else(|| zero.clone()));
            r
        })
        .collect();
    let equations = rows.len();
    let (red, pivots) = Matrix::from_rows(rows).rref();
    let n = monomials.len();
    if pivots.contains(&n) {
        return Err(CertError::Structure("discriminant system is inconsistent".into()));
    }
    if pivots.len() < n {
        return Err(CertError::Structure("discriminant system is underdetermined".into()));
    }
    let raw: Vec<Rational> = (0..n).map(|i| red.get(i, n).clone()).collect();
    let sigma = raw[0].clone();
    if RingOps::is_zero(&sigma) {
        return Err(CertError::Structure("C^3 coefficient vanishes".into()));
    }
    let normalized = raw.iter().map(|x| x / &sigma).collect();
    Ok(DiscriminantExpression {
        monomials,
        raw,
        sigma,
        normalized,
        equations,
    })
}

/// The relation after `Delta -> Delta / t` (hence `C -> C / t^2`,
/// `K -> K / t^3`): the `(a, b, c)` coefficient picks up `t^(b + 2c - 6)`.
pub fn rescale_relation(monomials: &[[u32; 3]], normalized: &[Rational], t: i64) -> Vec<Rational> {
    monomials
        .iter()
        .zip(normalized)
        .map(|(&[_, b, c], x)| {
            let e = b as i32 + 2 * c as i32 - 6;
            x * Rational::from_integer(t.into()).pow(e)
        })
        .collect()
}

pub fn printed_discriminant() -> Vec<Rational> {
    PRINTED_DISCRIMINANT.iter().map(|&v| int(v)).collect()
}

#[derive(Debug, Clone)]
pub struct LocalIdentities {
    pub g332_mirror_identity: bool,
    pub g212_mirror_identity: bool,
    pub g332_invariance: bool,
    pub g212_invariance: bool,
}

fn poly2(terms: &[([u32; 2], i64)]) -> QPoly {
    QPoly::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
}

fn invariant_under(pols: &[CPoly], gens: &[Matrix<Cyclotomic>]) -> Result<bool> {
    for p in pols {
        for g in gens {
            if p.substitute_linear(g)? != *p {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn local_quotient_identities() -> Result<LocalIdentities> {
    // (z1^3 + z2^3)^2 - 4 (z1 z2)^3 = (z1^3 - z2^3)^2
    let u2 = poly2(&[([3, 0], 1), ([0, 3], 1)]);
    let u1 = poly2(&[([1, 1], 1)]);
    let one = int(1);
    let lhs = u2.mul(&u2).sub(&u1.pow(3, &one).scale(&int(4)));
    let d = poly2(&[([3, 0], 1), ([0, 3], -1)]);
    let g332_mirror_identity = lhs == d.mul(&d);

    // z1^2 z2^2 (z1^2 - z2^2)^2 = v1 (v2^2 - 4 v1)
    let v1 = poly2(&[([2, 2], 1)]);
    let v2 = poly2(&[([2, 0], 1), ([0, 2], 1)]);
    let e = poly2(&[([2, 0], 1), ([0, 2], -1)]);
    let lhs = v1.mul(&e).mul(&e);
    let rhs = v1.mul(&v2.mul(&v2).sub(&v1.scale(&int(4))));
    let g212_mirror_identity = lhs == rhs;

    let c = |q: i64| Cyclotomic::from_int(q, 3);
    let w = Cyclotomic::zeta_pow(3, 1);
    let wb = Cyclotomic::zeta_pow(3, 2);
    let swap = Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(0)]]);
    let rot = Matrix::from_rows(vec![vec![w, c(0)], vec![c(0), wb]]);
    let neg = Matrix::from_rows(vec![vec![c(-1), c(0)], vec![c(0), c(1)]]);
    let lift = |p: &QPoly| p.map_coeffs(|q| Cyclotomic::from_rational(q, 3));
    let g332_invariance = invariant_under(&[lift(&u1), lift(&u2)], &[swap.clone(), rot])?;
    let g212_invariance = invariant_under(&[lift(&v1), lift(&v2)], &[swap, neg])?;
    Ok(LocalIdentities {
        g332_mirror_identity,
        g212_mirror_identity,
        g332_invariance,
        g212_invariance,
    })
}

/// The Jacobian `det(grad f, grad Delta, grad C)` is `14 K`; nonzero means
/// `f, Delta, C` are algebraically independent.
pub fn jacobian_nonzero(basis: &InvariantBasis) -> bool {
    !basis.k_inv.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_has_nine_terms() {
        let m = ansatz_monomials();
        assert_eq!(m.len(), 9);
        assert!(m.iter().all(|[a, b, c]| 2 * a + 3 * b + 7 * c == 21));
        assert_eq!(m[0], [0, 0, 3]);
        assert_eq!(m[8], [9, 1, 0]);
    }

    #[test]
    fn permutation_action() {
        let f = printed_quartic();
        let g = permute_vars(&f, [0, 2, 1]);
        assert_eq!(g.coeff(&[3, 0, 1]), Some(&int(1)));
        assert_eq!(permute_vars(&g, [0, 2, 1]), f);
    }

    #[test]
    fn local_identities_hold() {
        let l = local_quotient_identities().unwrap();
        assert!(l.g332_mirror_identity && l.g212_mirror_identity);
        assert!(l.g332_invariance && l.g212_invariance);
    }
}
