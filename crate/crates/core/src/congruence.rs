//! Reduction of the sporadic generators modulo primes above 2 and 3, and
//! the structure of the resulting finite matrix groups.

use std::collections::{HashMap, VecDeque};

use exact::cyclotomic::cyclotomic_polynomial;
use exact::rational::reduce_mod;
use exact::{Conjugate, Cyclotomic, Gf, GfField, Matrix, RingOps, Rational, Scalar};

use crate::error::{CertError, Result};
use crate::group::{center, closure};
use crate::klein::CMat;
use crate::orbifold::{weights_for, Weight};
use crate::presentations::{Presentation, Word};
use crate::sporadic::{build_sporadic, tau, SporadicGenerators};

pub type GMat = Matrix<Gf>;

pub const CLOSURE_BOUND: usize = 5_000;

/// Values of `p` with a reduction of interest.
pub const CONGRUENCE_P: [Weight; 4] =
    [Weight::Finite(4), Weight::Finite(6), Weight::Finite(8), Weight::Infinite];

/// Ring map `Z_(l)[a, tau] -> F_q` determined by the images of `a` and
/// `tau`. Elements of `Q(zeta_N)` are first written in the basis
/// `a^i tau^j` (`i < deg a`, `j < 2`), which is a basis of `Q(a, tau)`
/// because `Q(a)` does not contain `sqrt(-7)` for the `p` used here.
#[derive(Debug, Clone)]
pub struct ResidueHom {
    pub p: Weight,
    pub target: GfField,
    pub conductor: u32,
    pub a: Gf,
    pub tau: Gf,
    a_degree: usize,
    coords: Matrix<Rational>,
    pivots: Vec<usize>,
    solve: Matrix<Rational>,
}

fn a_exact(p: Weight, n: u32) -> Cyclotomic {
    match p {
        Weight::Finite(v) => Cyclotomic::zeta_pow(n, (n / v) as i64),
        Weight::Infinite => Cyclotomic::one(n),
    }
}

fn eval_int_poly(coeffs: &[i64], x: &Gf) -> Gf {
    let f = x.field();
    coeffs.iter().rev().fold(f.zero(), |acc, &c| acc * *x + f.elem(c, 0))
}

/// Minimal polynomial of `a` over `Q`, constant term first.
fn a_minpoly(p: Weight) -> Vec<i64> {
    match p {
        Weight::Finite(v) => cyclotomic_polynomial(v),
        Weight::Infinite => vec![-1, 1],
    }
}

pub fn target_field(p: Weight) -> Result<GfField> {
    match p {
        Weight::Finite(4) | Weight::Finite(8) | Weight::Infinite => Ok(GfField::f2()),
        Weight::Finite(6) => Ok(GfField::f9()),
        _ => Err(CertError::InvalidWeight(p.to_string())),
    }
}

impl ResidueHom {
    pub fn new(p: Weight, a: Gf, tau_img: Gf) -> Result<Self> {
        let target = target_field(p)?;
        let n = crate::sporadic::field_for(p);
        let ae = a_exact(p, n);
        let te = tau(n);
        let a_degree = a_minpoly(p).len() - 1;
        let mut cols = Vec::new();
        for j in 0..2 {
            for i in 0..a_degree {
                cols.push(ae.pow(i as u64).mul_ref(&te.pow(j as u64)).coeffs());
            }
        }
        let phi = cols[0].len();
        let coords = Matrix::from_rows((0..phi).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
        let (_, pivots) = coords.transpose().rref();
        if pivots.len() != cols.len() {
            return Err(CertError::Structure("a^i tau^j are linearly dependent".into()));
        }
        let square = Matrix::from_rows(pivots.iter().map(|&r| coords.row(r).to_vec()).collect());
        let solve = square.inverse()?;
        let hom = ResidueHom { p, target, conductor: n, a, tau: tau_img, a_degree, coords, pivots, solve };
        if !hom.relations_hold() {
            return Err(CertError::Structure(format!("images ({a}, {tau_img}) violate the defining relations")));
        }
        Ok(hom)
    }

    /// All `(a, tau)` image pairs compatible with the defining relations.
    pub fn candidates(p: Weight) -> Result<Vec<(Gf, Gf)>> {
        let f = target_field(p)?;
        let mp = a_minpoly(p);
        let elems = f.elements();
        let mut out = Vec::new();
        for a in elems.iter().filter(|x| eval_int_poly(&mp, x).is_zero()) {
            for t in elems.iter().filter(|x| eval_int_poly(&[2, 1, 1], x).is_zero()) {
                out.push((*a, *t));
            }
        }
        Ok(out)
    }

    pub fn tau_bar(&self) -> Gf {
        -self.target.one() - self.tau
    }

    /// `tau^2 + tau + 2 = 0`, `Phi_p(a) = 0`, and the extra relations
    /// `omega^2 + omega + 1 = 0` (`omega = a^2`, `p = 6`), `a^4 = -1`
    /// (`p = 8`).
    pub fn relations_hold(&self) -> bool {
        let f = self.target;
        let t = self.tau;
        let mut ok = (t * t + t + f.elem(2, 0)).is_zero()
            && eval_int_poly(&a_minpoly(self.p), &self.a).is_zero()
            && self.tau_bar() == -f.one() - t;
        if let Weight::Finite(v) = self.p {
            ok &= self.a.pow(v as u64).is_one();
        }
        match self.p {
            Weight::Finite(6) => {
                let w = self.a * self.a;
                ok &= (w * w + w + f.one()).is_zero();
            }
            Weight::Finite(8) => ok &= self.a.pow(4) == -f.one(),
            _ => {}
        }
        ok
    }

    /// Coordinates of `z` in the basis `a^i tau^j`; `None` when `z` lies
    /// outside `Q(a, tau)`.
    pub fn coordinates(&self, z: &Cyclotomic) -> Option<Vec<Rational>> {
        let z = z.embed(self.conductor);
        let v = z.coeffs();
        let rhs: Vec<Rational> = self.pivots.iter().map(|&r| v[r].clone()).collect();
        let c: Vec<Rational> = (0..self.solve.rows())
            .map(|i| self.solve.row(i).iter().zip(&rhs).map(|(x, y)| x * y).sum())
            .collect();
        let back: Vec<Rational> = (0..self.coords.rows())
            .map(|r| self.coords.row(r).iter().zip(&c).map(|(x, y)| x * y).sum())
            .collect();
        (back == v).then_some(c)
    }

    pub fn reduce(&self, z: &Cyclotomic) -> Option<Gf> {
        let c = self.coordinates(z)?;
        let f = self.target;
        let q = f.characteristic();
        let mut acc = f.zero();
        for (k, ck) in c.iter().enumerate() {
            let (j, i) = (k / self.a_degree, k % self.a_degree);
            let r = reduce_mod(ck, q)?;
            acc = acc + f.elem(r as i64, 0) * self.a.pow(i as u64) * self.tau.pow(j as u64);
        }
        Some(acc)
    }

    pub fn reduce_matrix(&self, m: &CMat) -> Option<GMat> {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().map(|z| self.reduce(z)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix::from_rows(rows))
    }
}

fn gmat(f: GfField, rows: &[[(i64, i64); 3]; 3]) -> GMat {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(c0, c1)| f.elem(c0, c1)).collect()).collect())
}

/// Reduced generators as displayed: the same unipotent triple for
/// `p = 4, 8, inf` over `F_2`, and the `F_9` triple for `p = 6`.
pub fn reference_reductions(p: Weight) -> Result<[GMat; 3]> {
    let f = target_field(p)?;
    let (o, z) = ((1, 0), (0, 0));
    if f.order() == 2 {
        return Ok([
            gmat(f, &[[o, o, z], [z, o, z], [z, z, o]]),
            gmat(f, &[[o, z, z], [z, o, o], [z, z, o]]),
            gmat(f, &[[o, z, z], [z, o, z], [o, z, o]]),
        ]);
    }
    let (two, u, tu, tu1, u2) = ((2, 0), (0, 1), (0, 2), (1, 2), (2, 1));
    Ok([
        gmat(f, &[[two, tu, tu1], [z, o, z], [z, z, o]]),
        gmat(f, &[[o, z, z], [u2, two, tu], [z, z, o]]),
        gmat(f, &[[o, z, z], [z, o, z], [u, u2, two]]),
    ])
}

/// The residue map reproducing the displayed reductions: compatible image
/// pairs are tried in order and the first match is returned.
pub fn residue_hom(p: Weight) -> Result<ResidueHom> {
    let gens = build_sporadic(p)?;
    let want = reference_reductions(p)?;
    for (a, t) in ResidueHom::candidates(p)? {
        let hom = ResidueHom::new(p, a, t)?;
        let got = reduce_generators(&hom, &gens)?;
        if got == want {
            return Ok(hom);
        }
    }
    Err(CertError::Structure(format!("no residue map reproduces the displayed reductions at p = {p}")))
}

pub fn reduce_generators(hom: &ResidueHom, gens: &SporadicGenerators) -> Result<[GMat; 3]> {
    let red = |m: &CMat| {
        hom.reduce_matrix(m)
            .ok_or_else(|| CertError::Structure(format!("generator not integral at p = {}", hom.p)))
    };
    Ok([red(&gens.r[0])?, red(&gens.r[1])?, red(&gens.r[2])?])
}

/// Positions where `got` differs from `want`.
pub fn entry_mismatches(got: &GMat, want: &GMat) -> Vec<(usize, usize)> {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|&(i, j)| got.get(i, j) != want.get(i, j))
        .collect()
}

#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    pub gens: Vec<GMat>,
    pub elements: Vec<GMat>,
    pub center: Vec<GMat>,
    pub classes: Vec<Vec<usize>>,
}

pub fn gl3_order(q: u64) -> u64 {
    (q.pow(3) - 1) * (q.pow(3) - q) * (q.pow(3) - q * q)
}

impl FiniteMatrixGroup {
    pub fn generate(gens: &[GMat]) -> Result<Self> {
        let elements = closure(gens, CLOSURE_BOUND)?;
        let center = center(&elements, gens);
        let index: HashMap<&GMat, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let inverses: Vec<GMat> = gens.iter().map(|g| g.inverse()).collect::<std::result::Result<_, _>>()?;
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (g, gi) in gens.iter().zip(&inverses) {
                    let y = gi.mul(&elements[x]).mul(g);
                    let k = index[&y];
                    if class_of[k] == usize::MAX {
                        class_of[k] = id;
                        members.push(k);
                        queue.push_back(k);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(FiniteMatrixGroup { gens: gens.to_vec(), elements, center, classes })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn center_is_central(&self) -> bool {
        self.center.iter().all(|z| self.elements.iter().all(|g| z.mul(g) == g.mul(z)))
    }

    pub fn class_sizes_sum(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// `G / Z(G)` is simple: every conjugacy class outside the center
    /// generates `G` together with the center.
    pub fn central_quotient_is_simple(&self) -> Result<bool> {
        for class in &self.classes {
            let members: Vec<GMat> = class.iter().map(|&i| self.elements[i].clone()).collect();
            if members.iter().all(|m| self.center.contains(m)) {
                continue;
            }
            let mut gens = members;
            gens.extend(self.center.iter().cloned());
            if closure(&gens, CLOSURE_BOUND)?.len() != self.order() {
                return Ok(false);
            }
        }
        Ok(self.order() / self.center.len() > 1)
    }
}

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

fn check(name: &str, holds: bool) -> IdentityCheck {
    IdentityCheck { name: name.into(), holds }
}

/// `R1 (R2 R3)^2 R1 = T12` and `R2 (R3 R1)^2 R2 = T23` over `F_2`.
pub fn transposition_identities(r: &[GMat; 3]) -> Vec<IdentityCheck> {
    let f = r[0].get(0, 0).field();
    let (o, z) = ((1, 0), (0, 0));
    let t12 = gmat(f, &[[z, o, z], [o, z, z], [z, z, o]]);
    let t23 = gmat(f, &[[o, z, z], [z, z, o], [z, o, z]]);
    let sq = |m: GMat| m.mul(&m);
    vec![
        check("R1 (R2 R3)^2 R1 = T12", r[0].mul(&sq(r[1].mul(&r[2]))).mul(&r[0]) == t12),
        check("R2 (R3 R1)^2 R2 = T23", r[1].mul(&sq(r[2].mul(&r[0]))).mul(&r[1]) == t23),
    ]
}

/// Relators of the Shephard-Todd presentation for `A1 = R1`, `A2 = R2`,
/// `A3 = R2 R3 R2`. `A2^3` is evaluated as displayed, next to `A2^2`.
pub fn shephard_todd_relators(r: &[GMat; 3]) -> Vec<IdentityCheck> {
    let a1 = r[0].clone();
    let a2 = r[1].clone();
    let a3 = r[1].mul(&r[2]).mul(&r[1]);
    let id = a1.identity_like();
    let pw = |m: &GMat, k: i64| m.pow(k).expect("invertible");
    vec![
        check("A1^2 = I", pw(&a1, 2) == id),
        check("A2^3 = I", pw(&a2, 3) == id),
        check("A2^2 = I", pw(&a2, 2) == id),
        check("A3^2 = I", pw(&a3, 2) == id),
        check("(A1 A2)^4 = I", pw(&a1.mul(&a2), 4) == id),
        check("(A2 A3)^4 = I", pw(&a2.mul(&a3), 4) == id),
        check("(A3 A1)^3 = I", pw(&a3.mul(&a1), 3) == id),
        check("(A1 A2 A1 A3)^3 = I", pw(&a1.mul(&a2).mul(&a1).mul(&a3), 3) == id),
    ]
}

/// `(i - tau)^2 (i - tau_bar)^2 = 2i` in `Q(zeta_28)`.
pub fn two_splitting_identity() -> bool {
    let n = 28;
    let i = Cyclotomic::zeta_pow(n, 7);
    let t = tau(n);
    let x = i.sub_ref(&t);
    let y = i.sub_ref(&t.conj());
    let lhs = x.mul_ref(&x).mul_ref(&y).mul_ref(&y);
    lhs == i.mul_ref(&Cyclotomic::from_int(2, n))
}

/// Multiplication table of a finite group, for fast word evaluation.
pub struct CayleyTable {
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl CayleyTable {
    pub fn new(elements: &[GMat]) -> Self {
        let index: HashMap<&GMat, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mul: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let identity = index[&elements[0].identity_like()];
        let inv = (0..elements.len())
            .map(|a| (0..elements.len()).find(|&b| mul[a][b] == identity).expect("group"))
            .collect();
        CayleyTable { mul, inv, identity }
    }

    pub fn eval(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(self.identity, |acc, &l| {
            let g = images[l.unsigned_abs() as usize - 1];
            self.mul[acc][if l > 0 { g } else { self.inv[g] }]
        })
    }

    pub fn generated_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.mul.len()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul[x][g];
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count
    }
}

/// Meridian words around the exceptional curves: `(alpha beta)^2` with
/// `beta = delta^-1 alpha delta` over `s4`, `(alpha delta^2)^3` over `s3`.
pub fn meridian_words() -> (Word, Word) {
    let (a, d) = (Word::generator(0), Word::generator(1));
    let b = d.inverse().mul(&a).mul(&d);
    (a.mul(&b).pow(2), a.mul(&d.pow(2)).pow(3))
}

/// Relators for the census at `p`: the complement presentation with
/// `alpha^p`, and, when `refined`, the meridian powers `e^m`, `f^n`.
pub fn census_relators(p: Weight, refined: bool) -> Result<Vec<Word>> {
    let w = weights_for(p)?;
    let finite = match p {
        Weight::Finite(v) => Some(v),
        Weight::Infinite => None,
    };
    let mut rels = Presentation::klein_complement(finite)?.relators;
    if refined {
        let (e, f) = meridian_words();
        let power = |x: &Word, m: Option<Weight>| match m {
            Some(Weight::Finite(k)) => Some(x.pow(k as i64)),
            _ => None,
        };
        rels.extend(power(&e, w.m));
        rels.extend(power(&f, w.n));
    }
    Ok(rels)
}

/// Number of pairs `(A, D)` in `G x G` satisfying `relators` (with
/// `alpha -> A`, `delta -> D`) and generating `G`.
pub fn epimorphism_census(table: &CayleyTable, relators: &[Word]) -> usize {
    let n = table.mul.len();
    let mut count = 0;
    for a in 0..n {
        for d in 0..n {
            let imgs = [a, d];
            if relators.iter().all(|r| table.eval(r, &imgs) == table.identity)
                && table.generated_order(&imgs) == n
            {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_reduction_and_order() {
        let hom = residue_hom(Weight::Finite(4)).unwrap();
        assert_eq!((hom.a, hom.tau), (GfField::f2().one(), GfField::f2().one()));
        let r = reduce_generators(&hom, &build_sporadic(Weight::Finite(4)).unwrap()).unwrap();
        let g = FiniteMatrixGroup::generate(&r).unwrap();
        assert_eq!(g.order(), 168);
        assert!(transposition_identities(&r).iter().all(|c| c.holds));
    }

    #[test]
    fn p6_residue_images() {
        let hom = residue_hom(Weight::Finite(6)).unwrap();
        let f = GfField::f9();
        assert_eq!((hom.a, hom.tau, hom.tau_bar()), (f.elem(2, 0), f.elem(0, 2), f.elem(2, 1)));
    }

    #[test]
    fn cyclotomic_identity() {
        assert!(two_splitting_identity());
    }
}
