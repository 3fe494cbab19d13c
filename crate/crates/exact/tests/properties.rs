use exact::rational::int;
use exact::{cyc_make, Conjugate, Cyclotomic, GfField, Matrix, MultiPoly, RingOps, Scalar};
use proptest::prelude::*;

fn cyc(n: u32) -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec(-6i64..7, n as usize).prop_map(move |v| {
        let q: Vec<_> = v.into_iter().map(int).collect();
        cyc_make(&q, n).unwrap()
    })
}

fn mat7() -> impl Strategy<Value = Matrix<Cyclotomic>> {
    proptest::collection::vec(cyc(7), 9).prop_map(|v| {
        Matrix::from_rows(v.chunks(3).map(|c| c.to_vec()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms_q_zeta_12(a in cyc(12), b in cyc(12), c in cyc(12)) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn normal_form_is_idempotent(v in proptest::collection::vec(-9i64..10, 1..30), n in 1u32..40) {
        let q: Vec<_> = v.into_iter().map(int).collect();
        let z = cyc_make(&q, n).unwrap();
        let again = cyc_make(&z.coeffs(), n).unwrap();
        prop_assert_eq!(z.coeffs().len(), z.degree());
        prop_assert_eq!(again, z);
    }

    #[test]
    fn conjugation_is_a_ring_map(a in cyc(21), b in cyc(21)) {
        prop_assert_eq!(a.mul_ref(&b).conj(), a.conj().mul_ref(&b.conj()));
        prop_assert_eq!(a.add_ref(&b).conj(), a.conj().add_ref(&b.conj()));
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn embedding_is_a_ring_map(a in cyc(7), b in cyc(7)) {
        prop_assert_eq!(a.mul_ref(&b).embed(28), a.embed(28).mul_ref(&b.embed(28)));
        prop_assert_eq!(a.embed(28).add_ref(&b), a.add_ref(&b).embed(28));
    }

    #[test]
    fn determinant_is_multiplicative(a in mat7(), b in mat7()) {
        let lhs = a.mul(&b).det().unwrap();
        let rhs = a.det().unwrap().mul_ref(&b.det().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(
        cf in proptest::collection::vec(-3i64..4, 6),
        cg in proptest::collection::vec(-3i64..4, 6),
        m in proptest::collection::vec(-2i64..3, 9),
    ) {
        let mono = [[2u32, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [0, 1, 1], [1, 0, 1]];
        let f = MultiPoly::from_terms(3, mono.iter().zip(&cf).map(|(e, &c)| (e.to_vec(), int(c))));
        let g = MultiPoly::from_terms(3, mono.iter().zip(&cg).map(|(e, &c)| (e.to_vec(), int(c))));
        let m = Matrix::from_rows(m.chunks(3).map(|r| r.iter().map(|&v| int(v)).collect()).collect());
        let lhs = f.mul(&g).substitute_linear(&m).unwrap();
        let rhs = f.substitute_linear(&m).unwrap().mul(&g.substitute_linear(&m).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn f9_axioms(a in 0i64..3, b in 0i64..3, c in 0i64..3, d in 0i64..3) {
        let f = GfField::f9();
        let (x, y) = (f.elem(a, b), f.elem(c, d));
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!((x + y) * (x + y), x * x + y * y + x * y + x * y);
        if !RingOps::is_zero(&x) {
            prop_assert!((x * x.inv().unwrap()).is_one());
        }
    }
}
