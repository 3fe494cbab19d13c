use std::sync::OnceLock;

use exact::{rat, Cyclotomic, Gf, RingOps, Scalar};
use klein_cert::congruence::{residue_hom, CayleyTable, FiniteMatrixGroup, ResidueHom};
use klein_cert::orbifold::{DivClass, ModelTag, SurfaceModel, Weight, S3_CHAIN, S4_CHAIN};
use klein_cert::presentations::{braid_relator, todd_coxeter, CosetTable, Presentation, Word};
use klein_cert::report::{CheckResult, Ledger, Status};
use proptest::prelude::*;

fn word(max_gen: i32) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=max_gen, any::<bool>()), 0..12)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|(g, neg)| if neg { -g } else { g })))
}

fn trace(t: &CosetTable, c: usize, w: &Word) -> usize {
    w.letters().iter().fold(c, |c, &l| {
        let col = 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0);
        t.table[c][col]
    })
}

fn local_tables() -> &'static Vec<(Presentation, CosetTable)> {
    static T: OnceLock<Vec<(Presentation, CosetTable)>> = OnceLock::new();
    T.get_or_init(|| {
        [(2, 3), (3, 2), (3, 3), (4, 2), (4, 3)]
            .into_iter()
            .map(|(n, p)| {
                let pres = Presentation::local_group(n, p).unwrap();
                let t = todd_coxeter(&pres, 10_000).unwrap();
                (pres, t)
            })
            .collect()
    })
}

fn gl3() -> &'static CayleyTable {
    static T: OnceLock<CayleyTable> = OnceLock::new();
    T.get_or_init(|| {
        let hom = residue_hom(Weight::Finite(4)).unwrap();
        let s = klein_cert::sporadic::build_sporadic(Weight::Finite(4)).unwrap();
        let r = klein_cert::congruence::reduce_generators(&hom, &s).unwrap();
        CayleyTable::new(&FiniteMatrixGroup::generate(&r).unwrap().elements)
    })
}

fn homs() -> &'static Vec<ResidueHom> {
    static H: OnceLock<Vec<ResidueHom>> = OnceLock::new();
    H.get_or_init(|| klein_cert::congruence::CONGRUENCE_P.iter().map(|&p| residue_hom(p).unwrap()).collect())
}

/// `sum c_ij a^i tau^j` in the field of `hom`.
fn lattice_element(hom: &ResidueHom, coeffs: &[i64]) -> (Cyclotomic, Gf) {
    let n = hom.conductor;
    let a = match hom.p {
        Weight::Finite(v) => Cyclotomic::zeta_pow(n, (n / v) as i64),
        Weight::Infinite => Cyclotomic::one(n),
    };
    let t = klein_cert::sporadic::tau(n);
    let f = hom.target;
    let mut z = Cyclotomic::zero(n);
    let mut img = f.zero();
    for (k, &c) in coeffs.iter().enumerate() {
        let (i, j) = ((k / 2) as u64, (k % 2) as u64);
        let term = a.pow(i).mul_ref(&t.pow(j)).mul_ref(&Cyclotomic::from_int(c, n));
        z = z.add_ref(&term);
        img = img + f.elem(c, 0) * hom.a.pow(i) * hom.tau.pow(j);
    }
    (z, img)
}

fn div_class() -> impl Strategy<Value = DivClass> {
    (-20i64..20, 1i64..8, -20i64..20, 1i64..8, -20i64..20, 1i64..8)
        .prop_map(|(a, b, c, d, e, f)| DivClass::new(rat(a, b), rat(c, d), rat(e, f)))
}

proptest! {
    #[test]
    fn words_form_a_group(a in word(3), b in word(3), c in word(3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_empty());
        prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
    }

    #[test]
    fn word_powers_add(a in word(2), j in -4i64..4, k in -4i64..4) {
        prop_assert_eq!(a.pow(j).mul(&a.pow(k)), a.pow(j + k));
    }

    #[test]
    fn braid_relator_swaps_to_inverse(n in 2usize..9, x in word(2), y in word(2)) {
        let r = braid_relator(n, &x, &y).unwrap();
        prop_assert_eq!(braid_relator(n, &y, &x).unwrap(), r.inverse());
        prop_assert!(braid_relator(n, &x, &x).unwrap().is_empty());
    }

    #[test]
    fn relator_conjugates_fix_every_coset(k in 0usize..5, w in word(2), ri in 0usize..3, c in 0usize..1000) {
        let (pres, t) = &local_tables()[k];
        let r = &pres.relators[ri];
        let conj = w.mul(r).mul(&w.inverse());
        let c = c % t.index();
        prop_assert_eq!(trace(t, c, &conj), c);
        prop_assert_eq!(trace(t, trace(t, c, &w), &w.inverse()), c);
    }

    #[test]
    fn cayley_evaluation_is_multiplicative(u in word(2), v in word(2), a in 0usize..168, d in 0usize..168) {
        let t = gl3();
        let imgs = [a, d];
        prop_assert_eq!(t.eval(&u.mul(&v), &imgs), t.mul[t.eval(&u, &imgs)][t.eval(&v, &imgs)]);
    }

    #[test]
    fn residue_map_is_a_ring_map(k in 0usize..4, x in prop::collection::vec(-6i64..6, 8), y in prop::collection::vec(-6i64..6, 8)) {
        let hom = &homs()[k];
        let deg = match hom.p { Weight::Finite(4) => 2, Weight::Finite(6) => 2, Weight::Finite(8) => 4, _ => 1 };
        let (zx, ix) = lattice_element(hom, &x[..2 * deg]);
        let (zy, iy) = lattice_element(hom, &y[..2 * deg]);
        prop_assert_eq!(hom.reduce(&zx), Some(ix));
        prop_assert_eq!(hom.reduce(&zx.add_ref(&zy)), Some(ix + iy));
        prop_assert_eq!(hom.reduce(&zx.mul_ref(&zy)), Some(ix * iy));
    }

    #[test]
    fn chain_discrepancies_decrease_in_lambda(a in 0i64..=12, b in 0i64..=12) {
        let (lo, hi) = (rat(a.min(b), 12), rat(a.max(b), 12));
        for chain in [&S4_CHAIN, &S3_CHAIN] {
            let (dl, dh) = (chain.discrepancies(&lo), chain.discrepancies(&hi));
            prop_assert!(dl.iter().zip(&dh).all(|(x, y)| y <= x));
        }
    }

    #[test]
    fn intersection_pairing_is_symmetric_bilinear(x in div_class(), y in div_class(), z in div_class(), k in -5i64..5) {
        for tag in [ModelTag::X, ModelTag::Y, ModelTag::Z] {
            let m = SurfaceModel::new(tag);
            prop_assert_eq!(m.pair(&x, &y), m.pair(&y, &x));
            let c = rat(k, 3);
            prop_assert_eq!(m.pair(&x.scale(&c).add(&y), &z), &c * m.pair(&x, &z) + m.pair(&y, &z));
        }
    }

    #[test]
    fn weight_display_round_trips(v in 2u32..100_000) {
        let w = Weight::Finite(v);
        prop_assert_eq!(w.to_string().parse::<Weight>().unwrap(), w);
        prop_assert_eq!(w.recip() * rat(v as i64, 1), rat(1, 1));
    }

    #[test]
    fn ledger_success_iff_no_fail(statuses in prop::collection::vec(0u8..5, 0..40)) {
        let all = [Status::Pass, Status::Fail, Status::ErratumDocumented, Status::Exploratory, Status::Skipped];
        let checks: Vec<CheckResult> = statuses
            .iter()
            .enumerate()
            .map(|(i, &s)| CheckResult {
                id: format!("x.{:03}", (i * 7919) % 1000),
                description: String::new(),
                status: all[s as usize],
                value: "0".into(),
                paper_ref: "plumbing".into(),
            })
            .collect();
        let l = Ledger::new(checks);
        let s = &l.summary;
        prop_assert_eq!(s.pass + s.fail + s.erratum_documented + s.exploratory + s.skipped, s.total);
        prop_assert_eq!(l.success, !statuses.contains(&1));
        prop_assert!(l.checks.windows(2).all(|w| w[0].id <= w[1].id));
        prop_assert_eq!(Ledger::new(l.checks.clone()).to_json(), l.to_json());
    }
}

#[test]
fn infinite_weight_round_trips() {
    for s in ["inf", "pinf", "infinity", "∞"] {
        assert_eq!(s.parse::<Weight>().unwrap(), Weight::Infinite);
    }
    assert!("1".parse::<Weight>().is_err());
}
