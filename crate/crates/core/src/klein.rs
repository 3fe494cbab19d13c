//! The order-168 group of projective automorphisms of the Klein quartic,
//! its 21 mirrors and the 171 special points.
//!
//! Group elements live over `Q(zeta_7)`, their field of definition.
//! Anything involving eigenvalues (orders 3 and 4 need `zeta_3` and `i`)
//! is embedded into `Q(zeta_84)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use exact::cyclotomic::i_sqrt7;
use exact::modular::ModularEmbedding;
use exact::rational::{int, rat};
use exact::{Conjugate, Cyclotomic, Matrix, Rational, RingOps, Scalar};

use crate::error::{CertError, Result};
use crate::group::{self, closure, cross, dot, kernel_rank2, mat_vec, normalize, proj_eq_vec};

pub type CMat = Matrix<Cyclotomic>;

pub const EIGEN_FIELD: u32 = 84;
pub const CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Clone)]
pub struct Generators {
    pub t: CMat,
    pub j: CMat,
    pub r: CMat,
}

/// `T = diag(z, z^2, z^4)`, the cyclic `J`, and the circulant-type `R` built
/// from `h = i/sqrt(7)`.
pub fn generators() -> Generators {
    let z = |k| Cyclotomic::zeta_pow(7, k);
    let o = Cyclotomic::zero(7);
    let l = Cyclotomic::one(7);
    let h = i_sqrt7().mul_ref(&Cyclotomic::from_rational(&rat(1, 7), 7));
    let im = |k| h.mul_ref(&z(k).sub_ref(&z(k).conj()));
    let (a, b, c) = (im(4), im(2), im(1));
    let t = Matrix::from_rows(vec![
        vec![z(1), o.clone(), o.clone()],
        vec![o.clone(), z(2), o.clone()],
        vec![o.clone(), o.clone(), z(4)],
    ]);
    let j = Matrix::from_rows(vec![
        vec![o.clone(), o.clone(), l.clone()],
        vec![l.clone(), o.clone(), o.clone()],
        vec![o.clone(), l, o],
    ]);
    let r = Matrix::from_rows(vec![
        vec![a.clone(), b.clone(), c.clone()],
        vec![b.clone(), c.clone(), a.clone()],
        vec![c, a, b],
    ]);
    Generators { t, j, r }
}

#[derive(Debug, Clone)]
pub struct KleinGroup {
    pub gens: Generators,
    pub order_tj: usize,
    /// `<T, J, R>`, identity first.
    pub elements: Vec<CMat>,
    /// `<T, J, R, -I>`.
    pub extended: Vec<CMat>,
}

pub fn generate_group() -> Result<KleinGroup> {
    let gens = generators();
    let tj = closure(&[gens.t.clone(), gens.j.clone()], CLOSURE_BOUND)?;
    let elements = closure(&[gens.t.clone(), gens.j.clone(), gens.r.clone()], CLOSURE_BOUND)?;
    let minus = gens.t.identity_like().neg();
    let extended = closure(
        &[gens.t.clone(), gens.j.clone(), gens.r.clone(), minus],
        CLOSURE_BOUND,
    )?;
    Ok(KleinGroup {
        order_tj: tj.len(),
        gens,
        elements,
        extended,
    })
}

pub fn embed_matrix(m: &CMat, n: u32) -> CMat {
    m.map(|x| x.embed(n))
}

/// Order and eigenvalues of a group element; eigenvalues are recorded as
/// exponents `e` of `zeta_84^e`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub order: u64,
    pub eigen: [u32; 3],
}

struct RootTable(Vec<Cyclotomic>);

impl RootTable {
    fn new() -> Self {
        RootTable((0..EIGEN_FIELD as i64).map(|k| Cyclotomic::zeta_pow(EIGEN_FIELD, k)).collect())
    }
    fn get(&self, e: u32) -> &Cyclotomic {
        &self.0[(e % EIGEN_FIELD) as usize]
    }
}

fn spectrum_with(g: &CMat, roots: &RootTable) -> Option<Spectrum> {
    let order = group::element_order(g, EIGEN_FIELD as u64)?;
    if !(EIGEN_FIELD as u64).is_multiple_of(order) {
        return None;
    }
    let step = EIGEN_FIELD / order as u32;
    let cp: Vec<Cyclotomic> = g.charpoly().ok()?.iter().map(|c| c.embed(EIGEN_FIELD)).collect();
    // t^3 - e1 t^2 + e2 t - e3
    let (e1, e2, e3) = (cp[2].neg_ref(), cp[1].clone(), cp[0].neg_ref());
    let ks: Vec<u32> = (0..order as u32).map(|k| k * step).collect();
    for (a, &x) in ks.iter().enumerate() {
        for (b, &y) in ks.iter().enumerate().skip(a) {
            for &w in ks.iter().skip(b) {
                let s1 = roots.get(x).add_ref(roots.get(y)).add_ref(roots.get(w));
                if s1 != e1 || *roots.get(x + y + w) != e3 {
                    continue;
                }
                let s2 = roots
                    .get(x + y)
                    .add_ref(roots.get(x + w))
                    .add_ref(roots.get(y + w));
                if s2 == e2 {
                    return Some(Spectrum { order, eigen: [x, y, w] });
                }
            }
        }
    }
    None
}

pub fn spectrum(g: &CMat) -> Option<Spectrum> {
    spectrum_with(g, &RootTable::new())
}

/// Everything the arrangement, orbit and Euler checks need, computed once.
#[derive(Debug, Clone)]
pub struct KleinAnalysis {
    pub group: KleinGroup,
    pub spectra: Vec<Option<Spectrum>>,
    /// Reflections of the order-336 group.
    pub reflections: Vec<CMat>,
    /// Mirror equations `l . x = 0`, normalized, over `Q(zeta_7)`.
    pub mirrors: Vec<Vec<Cyclotomic>>,
    /// Pairwise mirror intersections with the mirrors through each.
    pub crossings: Vec<(Vec<Cyclotomic>, Vec<usize>)>,
    /// Isolated fixed points of nontrivial elements, normalized, over
    /// `Q(zeta_84)`.
    pub special_points: Vec<Vec<Cyclotomic>>,
    /// Number of special points on each mirror.
    pub per_mirror: Vec<usize>,
    pub orbits: Vec<OrbitRow>,
    pub mirror_orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRow {
    pub label: String,
    pub size: usize,
    pub stabilizer: usize,
    pub mirrors: usize,
    /// Indices into `special_points`.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceReport {
    pub mirrors: usize,
    /// multiplicity -> number of points
    pub census: BTreeMap<usize, usize>,
    pub per_mirror: Vec<usize>,
    pub special_points: usize,
    pub pair_count: usize,
}

fn is_reflection(g: &CMat) -> bool {
    let id = g.identity_like();
    if g.mul(g) != id || g.as_scalar().is_some() {
        return false;
    }
    let d = g.sub(&id);
    d.rank() == 1
}

fn mirror_form(g: &CMat) -> Vec<Cyclotomic> {
    let d = g.sub(&g.identity_like());
    let row = (0..3)
        .map(|i| d.row(i).to_vec())
        .find(|r| r.iter().any(|x| !x.is_zero()))
        .expect("rank one");
    normalize(&row).expect("nonzero row")
}

fn row_times(v: &[Cyclotomic], m: &CMat) -> Vec<Cyclotomic> {
    (0..3).map(|j| dot(v, &m.col(j))).collect()
}

fn orbit_label(mirrors: usize, stabilizer: usize) -> String {
    match mirrors {
        0 => format!("t{stabilizer}"),
        1 => format!("t{}", stabilizer / 2),
        k => format!("s{k}"),
    }
}

impl KleinAnalysis {
    pub fn compute() -> Result<Self> {
        let group = generate_group()?;
        Self::from_group(group)
    }

    pub fn from_group(group: KleinGroup) -> Result<Self> {
        let roots = RootTable::new();
        let spectra: Vec<Option<Spectrum>> =
            group.elements.iter().map(|g| spectrum_with(g, &roots)).collect();

        let reflections: Vec<CMat> =
            group.extended.iter().filter(|g| is_reflection(g)).cloned().collect();
        let mut mirrors: Vec<Vec<Cyclotomic>> = Vec::new();
        for r in &reflections {
            let f = mirror_form(r);
            if !mirrors.contains(&f) {
                mirrors.push(f);
            }
        }

        let mut crossings: Vec<(Vec<Cyclotomic>, Vec<usize>)> = Vec::new();
        let mut at: HashMap<Vec<Cyclotomic>, usize> = HashMap::new();
        for a in 0..mirrors.len() {
            for b in a + 1..mirrors.len() {
                let p = normalize(&cross(&mirrors[a], &mirrors[b]))
                    .ok_or_else(|| CertError::Structure("coincident mirrors".into()))?;
                let k = *at.entry(p.clone()).or_insert_with(|| {
                    crossings.push((p, Vec::new()));
                    crossings.len() - 1
                });
                for m in [a, b] {
                    if !crossings[k].1.contains(&m) {
                        crossings[k].1.push(m);
                    }
                }
            }
        }

        let embedded: Vec<CMat> =
            group.elements.iter().map(|g| embed_matrix(g, EIGEN_FIELD)).collect();
        let mut special_points: Vec<Vec<Cyclotomic>> = Vec::new();
        let mut seen: HashSet<Vec<Cyclotomic>> = HashSet::new();
        for (g, sp) in embedded.iter().zip(&spectra).skip(1) {
            let sp = sp.as_ref().ok_or_else(|| CertError::Structure("element without spectrum".into()))?;
            let mut distinct = sp.eigen.to_vec();
            distinct.dedup();
            for e in distinct {
                let lam = roots.get(e);
                let m = g.sub(&g.identity_like().scale(lam));
                if let Some(v) = kernel_rank2(&m) {
                    let p = normalize(&v).expect("nonzero kernel vector");
                    if seen.insert(p.clone()) {
                        special_points.push(p);
                    }
                }
            }
        }

        let mirrors84: Vec<Vec<Cyclotomic>> = mirrors
            .iter()
            .map(|l| l.iter().map(|x| x.embed(EIGEN_FIELD)).collect())
            .collect();
        let per_mirror: Vec<usize> = mirrors84
            .iter()
            .map(|l| special_points.iter().filter(|p| dot(l, p).is_zero()).count())
            .collect();

        let orbits = orbit_rows(&group, &embedded, &special_points, &mirrors84)?;

        let mut orbit_forms: HashSet<Vec<Cyclotomic>> = HashSet::new();
        if let Some(l0) = mirrors.first() {
            for g in &group.elements {
                orbit_forms.insert(normalize(&row_times(l0, g)).expect("invertible"));
            }
        }
        if orbit_forms.iter().any(|f| !mirrors.contains(f)) {
            return Err(CertError::Structure("mirror orbit leaves the mirror set".into()));
        }

        Ok(KleinAnalysis {
            group,
            spectra,
            reflections,
            mirrors,
            crossings,
            special_points,
            per_mirror,
            orbits,
            mirror_orbit_size: orbit_forms.len(),
        })
    }

    pub fn incidence(&self) -> IncidenceReport {
        let mut census = BTreeMap::new();
        let mut pair_count = 0;
        for (_, through) in &self.crossings {
            *census.entry(through.len()).or_insert(0) += 1;
            pair_count += through.len() * (through.len() - 1) / 2;
        }
        IncidenceReport {
            mirrors: self.mirrors.len(),
            census,
            per_mirror: self.per_mirror.clone(),
            special_points: self.special_points.len(),
            pair_count,
        }
    }

    /// The common number of special points per mirror, if uniform.
    pub fn uniform_per_mirror(&self) -> Option<usize> {
        let first = *self.per_mirror.first()?;
        self.per_mirror.iter().all(|&s| s == first).then_some(first)
    }

    pub fn euler(&self) -> Option<EulerReport> {
        Some(euler_check(
            self.mirrors.len(),
            self.uniform_per_mirror()?,
            self.special_points.len(),
            self.group.elements.len(),
        ))
    }

    /// One line per mirror and per special point, exact serialization.
    pub fn dump_lines(&self) -> Vec<String> {
        let fmt = |v: &[Cyclotomic]| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        let mut label = vec![""; self.special_points.len()];
        for o in &self.orbits {
            for &i in &o.members {
                label[i] = &o.label;
            }
        }
        let mut out = Vec::new();
        for (i, l) in self.mirrors.iter().enumerate() {
            out.push(format!("mirror {i} {}", fmt(l)));
        }
        for (i, p) in self.special_points.iter().enumerate() {
            out.push(format!("point {i} {} {}", label[i], fmt(p)));
        }
        out
    }
}

/// Orbits of the special points. Orbit membership is found through a
/// reduction modulo a split prime that is checked to be injective on the
/// point set (then it detects equality exactly); stabilizer orders are
/// recounted in characteristic zero.
fn orbit_rows(
    group: &KleinGroup,
    embedded: &[CMat],
    points: &[Vec<Cyclotomic>],
    mirrors84: &[Vec<Cyclotomic>],
) -> Result<Vec<OrbitRow>> {
    let (emb, keys) = (0..8)
        .find_map(|skip| {
            let emb = ModularEmbedding::new(EIGEN_FIELD, skip);
            let keys: Option<Vec<Vec<u64>>> = points.iter().map(|p| emb.projective_key(p)).collect();
            let keys = keys?;
            let distinct: HashSet<&Vec<u64>> = keys.iter().collect();
            (distinct.len() == keys.len()).then_some((emb, keys))
        })
        .ok_or_else(|| CertError::Structure("no injective prime reduction found".into()))?;
    let index: HashMap<&Vec<u64>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let reduced: Vec<Vec<u64>> = group
        .elements
        .iter()
        .map(|g| g.entries().iter().map(|x| emb.reduce(x)).collect::<Option<Vec<u64>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| CertError::Structure("group not integral at the chosen prime".into()))?;

    let apply = |g: &[u64], k: &[u64]| -> Vec<u64> {
        let img: Vec<u64> = (0..3)
            .map(|i| (0..3).fold(0, |acc, j| emb.add(acc, emb.mul(g[3 * i + j], k[j]))))
            .collect();
        let lead = *img.iter().find(|&&x| x != 0).expect("invertible matrix");
        let inv = emb.inv(lead);
        img.iter().map(|&x| emb.mul(x, inv)).collect()
    };

    let mut assigned = vec![false; points.len()];
    let mut rows = Vec::new();
    for start in 0..points.len() {
        if assigned[start] {
            continue;
        }
        let mut members = Vec::new();
        for g in &reduced {
            let img = apply(g, &keys[start]);
            let &i = index
                .get(&img)
                .ok_or_else(|| CertError::Structure("special points not group-stable".into()))?;
            if !assigned[i] {
                assigned[i] = true;
                members.push(i);
            }
        }
        members.sort_unstable();
        let p = &points[start];
        let stabilizer = embedded
            .iter()
            .filter(|g| proj_eq_vec(&mat_vec(g, p), p))
            .count();
        let mirrors = mirrors84.iter().filter(|l| dot(l, p).is_zero()).count();
        rows.push(OrbitRow {
            label: orbit_label(mirrors, stabilizer),
            size: members.len(),
            stabilizer,
            mirrors,
            members,
        });
    }
    rows.sort_by_key(|r| (r.mirrors < 2, r.label.clone()));
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub per_mirror: usize,
    pub special_points: usize,
    pub chi_free: Rational,
    pub chi_quotient: Rational,
}

/// `chi(P^2) = chi(free) + mirrors*(2 - s) + F`, solved for `chi(free)`.
pub fn euler_check(mirrors: usize, per_mirror: usize, special: usize, order: usize) -> EulerReport {
    let line = int(2) - int(per_mirror as i64);
    let chi_free = int(3) - (int(mirrors as i64) * line + int(special as i64));
    EulerReport {
        per_mirror,
        special_points: special,
        chi_quotient: &chi_free / int(order as i64),
        chi_free,
    }
}

pub fn determinants_are_one(g: &KleinGroup) -> bool {
    g.elements.iter().all(|m| m.det().map(|d| d.is_one()).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_have_expected_orders() {
        let g = generators();
        assert_eq!(group::element_order(&g.t, 10), Some(7));
        assert_eq!(group::element_order(&g.j, 10), Some(3));
        assert_eq!(group::element_order(&g.r, 10), Some(2));
        assert!(g.r.det().unwrap().is_one());
        assert!(g.t.det().unwrap().is_one());
    }

    #[test]
    fn reflection_spectrum() {
        let g = generators();
        let minus_r = g.r.neg();
        assert!(is_reflection(&minus_r));
        assert!(!is_reflection(&g.r));
        // R has eigenvalues 1, -1, -1
        assert_eq!(spectrum(&g.r).unwrap().eigen, [0, 42, 42]);
    }

    #[test]
    fn euler_formula() {
        let e = euler_check(21, 10, 171, 168);
        assert_eq!(e.chi_free, int(0));
        assert_ne!(euler_check(21, 9, 171, 168).chi_free, int(0));
    }
}
