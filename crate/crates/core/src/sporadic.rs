//! Explicit generators `R1, R2, R3` of the sporadic groups over
//! `Q(zeta_N)`, their relations, the word identities relating them to the
//! braid-monodromy generators `alpha, delta`, and the invariant Hermitian
//! form.

use exact::interval::certified_sign;
use exact::{Conjugate, Cyclotomic, Matrix, RingOps, Scalar};
use num_integer::Integer;

use crate::error::{CertError, Result};
use crate::group::closure;
use crate::klein::CMat;
use crate::orbifold::Weight;

pub const CLOSURE_BOUND: usize = 10_000;

/// Values of `p` for which the generators are built.
pub const SPORADIC_FAMILY: [Weight; 8] = [
    Weight::Finite(2),
    Weight::Finite(3),
    Weight::Finite(4),
    Weight::Finite(5),
    Weight::Finite(6),
    Weight::Finite(8),
    Weight::Finite(12),
    Weight::Infinite,
];

/// Conductor of the field holding `a = exp(2 pi i / p)` and `tau`.
pub fn field_for(p: Weight) -> u32 {
    match p {
        Weight::Finite(v) => 7u32.lcm(&v),
        Weight::Infinite => 7,
    }
}

/// `tau = -(1 + i sqrt 7) / 2`, in `Q(zeta_n)` (7 | n).
pub fn tau(n: u32) -> Cyclotomic {
    let g = exact::cyclotomic::i_sqrt7().embed(n);
    Cyclotomic::one(n).add_ref(&g).neg_ref().mul_ref(&Cyclotomic::from_rational(&exact::rat(1, 2), n))
}

fn cmat(rows: Vec<Vec<Cyclotomic>>) -> CMat {
    Matrix::from_rows(rows)
}

#[derive(Debug, Clone)]
pub struct SporadicGenerators {
    pub p: Weight,
    pub field: u32,
    pub a: Cyclotomic,
    pub tau: Cyclotomic,
    pub r: [CMat; 3],
    pub j: CMat,
    pub p_elt: CMat,
    pub alpha: CMat,
    pub delta: CMat,
    pub form: CMat,
}

impl SporadicGenerators {
    pub fn all(&self) -> Vec<(&'static str, &CMat)> {
        vec![
            ("R1", &self.r[0]),
            ("R2", &self.r[1]),
            ("R3", &self.r[2]),
            ("J", &self.j),
            ("alpha", &self.alpha),
            ("delta", &self.delta),
        ]
    }
}

fn inv(m: &CMat) -> Result<CMat> {
    Ok(m.inverse()?)
}

pub fn build_sporadic(p: Weight) -> Result<SporadicGenerators> {
    if !SPORADIC_FAMILY.contains(&p) {
        return Err(CertError::InvalidWeight(p.to_string()));
    }
    let n = field_for(p);
    let a = match p {
        Weight::Finite(v) => Cyclotomic::zeta_pow(n, (n / v) as i64),
        Weight::Infinite => Cyclotomic::one(n),
    };
    let t = tau(n);
    let tb = t.conj();
    let (zero, one) = (Cyclotomic::zero(n), Cyclotomic::one(n));
    let r1 = cmat(vec![
        vec![a.clone(), t.clone(), tb.neg_ref()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
    ]);
    let r2 = cmat(vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![a.mul_ref(&tb).neg_ref(), a.clone(), t.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
    ]);
    let r3 = cmat(vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![a.mul_ref(&t), a.mul_ref(&tb).neg_ref(), a.clone()],
    ]);
    let w = [&r1, &r2, &r3, &r1, &r2, &r3, &r1]
        .iter()
        .fold(r1.identity_like(), |acc, m| acc.mul(m));
    let j = inv(&w)?;
    let p_elt = r1.mul(&j);
    let alpha = inv(&r3)?.mul(&r2).mul(&r3);
    let p2 = p_elt.mul(&p_elt);
    let p2i = inv(&p2)?;
    let delta = p2.mul(&r1).mul(&p2i).mul(&r1).mul(&p2);
    let form = orient(solve_form(&[&r1, &j])?)?;
    Ok(SporadicGenerators { p, field: n, a, tau: t, r: [r1, r2, r3], j, p_elt, alpha, delta, form })
}

/// The Hermitian forms `H` with `g^* H g = H` for every `g`; the solution
/// space must be one-dimensional. The returned basis vector is rescaled to
/// satisfy `H^* = H`.
pub fn solve_form(gens: &[&CMat]) -> Result<CMat> {
    let n = gens[0].get(0, 0).conductor();
    let zero = Cyclotomic::zero(n);
    let mut rows = Vec::new();
    for g in gens {
        let gs = g.adjoint();
        for i in 0..3 {
            for jj in 0..3 {
                // (g^* H g)_{ij} - h_{ij} as a linear form in h_{kl}.
                let mut row = vec![zero.clone(); 9];
                for k in 0..3 {
                    for l in 0..3 {
                        row[3 * k + l] = gs.get(i, k).mul_ref(g.get(l, jj));
                    }
                }
                row[3 * i + jj] = row[3 * i + jj].sub_ref(&Cyclotomic::one(n));
                rows.push(row);
            }
        }
    }
    let ker = Matrix::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(CertError::Structure(format!(
            "invariant form space has dimension {}, expected 1",
            ker.len()
        )));
    }
    let h0 = Matrix::from_rows(ker[0].chunks(3).map(|c| c.to_vec()).collect());
    let sym = h0.add(&h0.adjoint());
    if !sym.is_zero() {
        return Ok(sym);
    }
    let z = Cyclotomic::zeta_pow(n, 1);
    Ok(h0.scale(&z.sub_ref(&z.conj())))
}

/// The form is only defined up to a real scalar; flip its sign so that
/// positive eigenvalues are in the majority.
fn orient(h: CMat) -> Result<CMat> {
    let s = hermitian_signature(&h)?;
    Ok(if s.negative > s.positive { h.neg() } else { h })
}

pub fn preserves_form(g: &CMat, h: &CMat) -> bool {
    g.adjoint().mul(h).mul(g) == *h
}

#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    /// Witness scalar `c` with `rhs = c * lhs`, when the relation holds.
    pub scalar: Option<Cyclotomic>,
}

impl RelationCheck {
    fn projective(name: impl Into<String>, lhs: &CMat, rhs: &CMat) -> Self {
        let scalar = lhs.projective_ratio(rhs);
        RelationCheck { name: name.into(), holds: scalar.is_some(), scalar }
    }

    fn exact(name: impl Into<String>, holds: bool) -> Self {
        RelationCheck { name: name.into(), holds, scalar: None }
    }

    /// Holds as an equality of matrices, not only up to scalar.
    pub fn is_exact(&self) -> bool {
        self.scalar.as_ref().map_or(self.holds, Scalar::is_one)
    }
}

fn pow(m: &CMat, k: i64) -> Result<CMat> {
    Ok(m.pow(k)?)
}

fn poly_eq(lhs: &[Cyclotomic], rhs: &[Cyclotomic]) -> bool {
    lhs == rhs
}

/// Coefficients (constant first) of `prod (t - r)`.
fn poly_from_roots(roots: &[Cyclotomic], n: u32) -> Vec<Cyclotomic> {
    let mut c = vec![Cyclotomic::one(n)];
    for r in roots {
        let mut next = vec![Cyclotomic::zero(n); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].add_ref(ci);
            next[i] = next[i].sub_ref(&ci.mul_ref(r));
        }
        c = next;
    }
    c
}

pub fn verify_sporadic_relations(s: &SporadicGenerators) -> Result<Vec<RelationCheck>> {
    let n = s.field;
    let mut out = Vec::new();
    for (j, k) in [(0, 1), (1, 2), (2, 0)] {
        let (rj, rk) = (&s.r[j], &s.r[k]);
        let lhs = pow(&rj.mul(rk), 2)?;
        let rhs = pow(&rk.mul(rj), 2)?;
        out.push(RelationCheck::projective(format!("br4(R{}, R{})", j + 1, k + 1), &lhs, &rhs));
    }
    let id = s.j.identity_like();
    out.push(RelationCheck::projective("(R1 J)^7 ~ I", &pow(&s.p_elt, 7)?, &id));
    out.push(RelationCheck::projective("J^3 ~ I", &pow(&s.j, 3)?, &id));
    let ji = inv(&s.j)?;
    out.push(RelationCheck::projective("R2 ~ J R1 J^-1", &s.j.mul(&s.r[0]).mul(&ji), &s.r[1]));
    out.push(RelationCheck::projective("R3 ~ J^-1 R1 J", &ji.mul(&s.r[0]).mul(&s.j), &s.r[2]));

    let one = Cyclotomic::one(n);
    let cp = s.r[0].charpoly()?;
    out.push(RelationCheck::exact(
        "charpoly(R1) = (t - a)(t - 1)^2",
        poly_eq(&cp, &poly_from_roots(&[s.a.clone(), one.clone(), one.clone()], n)),
    ));
    if let Weight::Finite(p) = s.p {
        let m = n.lcm(&(3 * p));
        let u = Cyclotomic::zeta_pow(m, (m / (3 * p)) as i64);
        let scaled = embed_matrix(&s.r[0], m).scale(&u.conj());
        let want = poly_from_roots(&[u.mul_ref(&u), u.conj(), u.conj()], m);
        out.push(RelationCheck::exact(
            "charpoly(ubar R1) = (t - u^2)(t - ubar)^2",
            poly_eq(&scaled.charpoly()?, &want),
        ));
    }
    // (t - x)(t^2 + a^2 x^2): eigenvalues c ubar^2, c iu, -c iu.
    let cp = s.r[0].mul(&s.r[1]).charpoly()?;
    let x = cp[2].neg_ref();
    let a2 = s.a.mul_ref(&s.a);
    let pattern = cp[1] == a2.mul_ref(&x).mul_ref(&x) && cp[0] == a2.mul_ref(&x).mul_ref(&x).mul_ref(&x).neg_ref();
    out.push(RelationCheck::exact("eigenvalues of R1 R2 ~ (ubar^2, iu, -iu)", pattern));
    Ok(out)
}

pub fn embed_matrix(m: &CMat, n: u32) -> CMat {
    m.map(|z| z.embed(n))
}

pub fn naruki_witness(s: &SporadicGenerators) -> Result<Vec<RelationCheck>> {
    let (a, d) = (&s.alpha, &s.delta);
    let di = inv(d)?;
    let id = a.identity_like();
    let ad = a.mul(d);
    let d2 = d.mul(d);
    let mut out = vec![
        RelationCheck::projective("(alpha delta)^7 ~ I", &pow(&ad, 7)?, &id),
        RelationCheck::projective("br3(alpha, delta^2)", &a.mul(&d2).mul(a), &d2.mul(a).mul(&d2)),
    ];
    let c = di.mul(a).mul(d);
    out.push(RelationCheck::projective(
        "br4(alpha, delta^-1 alpha delta)",
        &pow(&a.mul(&c), 2)?,
        &pow(&c.mul(a), 2)?,
    ));
    out.push(RelationCheck::projective("delta^2 ~ R1", &d2, &s.r[0]));
    out.push(RelationCheck::projective(
        "(alpha delta)^2 alpha delta^-1 ~ J",
        &pow(&ad, 2)?.mul(a).mul(&di),
        &s.j,
    ));
    if let Weight::Finite(p) = s.p {
        out.push(RelationCheck::projective("alpha^p ~ I", &pow(a, p as i64)?, &id));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

fn sign_of(z: &Cyclotomic) -> Result<i32> {
    certified_sign(z).ok_or_else(|| CertError::Structure(format!("sign of {z} undetermined")))
}

/// Signature of a nondegenerate Hermitian `3x3` form. Uses the leading
/// principal minors when none vanishes (Jacobi), otherwise Descartes' rule
/// on the characteristic polynomial, which is exact for real-rooted
/// polynomials. All signs are certified by interval evaluation.
pub fn hermitian_signature(h: &CMat) -> Result<Signature> {
    if h.adjoint() != *h {
        return Err(CertError::Structure("form is not Hermitian".into()));
    }
    let n = h.rows();
    let minors: Vec<Cyclotomic> = (1..=n)
        .map(|k| {
            let sub = Matrix::from_rows((0..k).map(|i| h.row(i)[..k].to_vec()).collect());
            sub.det()
        })
        .collect::<std::result::Result<_, _>>()?;
    let signs: Vec<i32> = minors.iter().map(sign_of).collect::<Result<_>>()?;
    if signs[n - 1] == 0 {
        return Err(CertError::Structure("degenerate form".into()));
    }
    let count_changes = |s: &[i32]| {
        let nz: Vec<i32> = s.iter().copied().filter(|&x| x != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    if signs.iter().all(|&x| x != 0) {
        let mut seq = vec![1];
        seq.extend(&signs);
        let negative = count_changes(&seq);
        return Ok(Signature { positive: n - negative, negative });
    }
    let cp = h.charpoly()?;
    let cs: Vec<i32> = cp.iter().map(sign_of).collect::<Result<_>>()?;
    let positive = count_changes(&cs);
    Ok(Signature { positive, negative: n - positive })
}

/// `mu = (-7 + i sqrt 7) / 2`.
pub fn form_constant(n: u32) -> Cyclotomic {
    let g = exact::cyclotomic::i_sqrt7().embed(n);
    g.sub_ref(&Cyclotomic::from_int(7, n)).mul_ref(&Cyclotomic::from_rational(&exact::rat(1, 2), n))
}

/// Generators and form displayed for `p = inf`.
pub fn reference_infinity() -> (CMat, CMat, CMat) {
    let n = 7;
    let g = exact::cyclotomic::i_sqrt7();
    let half = Cyclotomic::from_rational(&exact::rat(1, 2), n);
    let (z, o) = (Cyclotomic::zero(n), Cyclotomic::one(n));
    let b = o.add_ref(&g).neg_ref().mul_ref(&half);
    let c = o.sub_ref(&g).mul_ref(&half);
    let r1 = cmat(vec![
        vec![o.clone(), b, c],
        vec![z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone()],
    ]);
    let j = cmat(vec![
        vec![z.clone(), z.clone(), o.clone()],
        vec![o.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone()],
    ]);
    let mu = form_constant(n);
    let mb = mu.conj();
    let h = cmat(vec![
        vec![z.clone(), mu.clone(), mb.clone()],
        vec![mb.clone(), z.clone(), mu.clone()],
        vec![mu, mb, z],
    ]);
    (r1, j, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOrder {
    pub matrix_order: usize,
    pub scalars: usize,
    pub projective_order: usize,
}

/// Order of `<R1, R2, R3>` at `p = 2`, as matrices and modulo scalars.
pub fn p2_closure_order() -> Result<ClosureOrder> {
    let s = build_sporadic(Weight::Finite(2))?;
    let elems = closure(&s.r, CLOSURE_BOUND)?;
    let scalars = elems.iter().filter(|g| g.as_scalar().is_some()).count();
    Ok(ClosureOrder {
        matrix_order: elems.len(),
        scalars,
        projective_order: elems.len() / scalars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_is_a_root_of_its_minimal_polynomial() {
        // tau^2 + tau + 2 = 0 and tau + tau_bar = -1.
        let t = tau(7);
        let v = t.mul_ref(&t).add_ref(&t).add_ref(&Cyclotomic::from_int(2, 7));
        assert!(v.is_zero());
        assert_eq!(t.add_ref(&t.conj()), Cyclotomic::from_int(-1, 7));
    }

    #[test]
    fn relations_at_p4() {
        let s = build_sporadic(Weight::Finite(4)).unwrap();
        for c in verify_sporadic_relations(&s).unwrap() {
            assert!(c.holds, "{}", c.name);
        }
        for c in naruki_witness(&s).unwrap() {
            assert!(c.holds, "{}", c.name);
        }
    }

    #[test]
    fn infinity_reference() {
        let s = build_sporadic(Weight::Infinite).unwrap();
        let (r1, j, h) = reference_infinity();
        assert_eq!(s.r[0], r1);
        assert!(preserves_form(&r1, &h) && preserves_form(&j, &h));
        assert!(s.form.projective_ratio(&h).is_some());
    }
}
