//! Finite matrix groups: closure, element orders, projective helpers.

use std::collections::{HashSet, VecDeque};

use exact::{Matrix, Scalar};

use crate::error::{CertError, Result};

/// Breadth-first closure of `gens` under right multiplication. The identity
/// comes first; elements appear in discovery order, so the output is
/// deterministic.
pub fn closure<S: Scalar>(gens: &[Matrix<S>], bound: usize) -> Result<Vec<Matrix<S>>> {
    let id = gens
        .first()
        .map(Matrix::identity_like)
        .ok_or_else(|| CertError::Structure("empty generating set".into()))?;
    let mut seen: HashSet<Matrix<S>> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s);
            if seen.contains(&h) {
                continue;
            }
            if out.len() >= bound {
                return Err(CertError::ClosureBound(bound));
            }
            seen.insert(h.clone());
            out.push(h.clone());
            queue.push_back(h);
        }
    }
    Ok(out)
}

/// Smallest `k >= 1` with `g^k = I`, searched up to `bound`.
pub fn element_order<S: Scalar>(g: &Matrix<S>, bound: u64) -> Option<u64> {
    let id = g.identity_like();
    let mut p = g.clone();
    for k in 1..=bound {
        if p == id {
            return Some(k);
        }
        p = p.mul(g);
    }
    None
}

/// Smallest `k >= 1` with `g^k` scalar.
pub fn projective_order<S: Scalar>(g: &Matrix<S>, bound: u64) -> Option<u64> {
    let mut p = g.clone();
    for k in 1..=bound {
        if p.as_scalar().is_some() {
            return Some(k);
        }
        p = p.mul(g);
    }
    None
}

pub fn cross<S: Scalar>(a: &[S], b: &[S]) -> [S; 3] {
    [
        a[1].mul_ref(&b[2]).sub_ref(&a[2].mul_ref(&b[1])),
        a[2].mul_ref(&b[0]).sub_ref(&a[0].mul_ref(&b[2])),
        a[0].mul_ref(&b[1]).sub_ref(&a[1].mul_ref(&b[0])),
    ]
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.mul_ref(y))
        .reduce(|s, t| s.add_ref(&t))
        .expect("nonempty vectors")
}

/// Projective normal form: first nonzero coordinate scaled to 1.
pub fn normalize<S: Scalar>(v: &[S]) -> Option<Vec<S>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv()?;
    Some(v.iter().map(|x| x.mul_ref(&inv)).collect())
}

pub fn mat_vec<S: Scalar>(m: &Matrix<S>, v: &[S]) -> Vec<S> {
    (0..m.rows()).map(|i| dot(m.row(i), v)).collect()
}

/// Same projective point: all 2x2 minors of `[a; b]` vanish.
pub fn proj_eq_vec<S: Scalar>(a: &[S], b: &[S]) -> bool {
    (0..a.len()).all(|i| {
        (i + 1..a.len()).all(|j| a[i].mul_ref(&b[j]) == a[j].mul_ref(&b[i]))
    })
}

/// Spanning vector of the kernel of a rank-2 3x3 matrix, from the cross
/// product of two independent rows; `None` when the rank is not 2.
pub fn kernel_rank2<S: Scalar>(m: &Matrix<S>) -> Option<Vec<S>> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(m.row(i), m.row(j));
        if c.iter().any(|x| !x.is_zero()) {
            let k = 3 - i - j;
            return dot(m.row(k), &c).is_zero().then(|| c.to_vec());
        }
    }
    None
}

/// Elements of `elems` commuting with every generator.
pub fn center<S: Scalar>(elems: &[Matrix<S>], gens: &[Matrix<S>]) -> Vec<Matrix<S>> {
    elems
        .iter()
        .filter(|z| gens.iter().all(|g| z.mul(g) == g.mul(z)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact::rational::int;
    use exact::RingOps;
    use exact::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn symmetric_group_closure() {
        let s = q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let c = q(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let g = closure(&[s.clone(), c.clone()], 100).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(element_order(&c, 10), Some(3));
        assert!(matches!(closure(&[s, c], 4), Err(CertError::ClosureBound(4))));
    }

    #[test]
    fn rank_two_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let k = kernel_rank2(&m).unwrap();
        assert!(mat_vec(&m, &k).iter().all(|x| x.is_zero()));
        assert!(kernel_rank2(&q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).is_none());
        assert!(proj_eq_vec(&[int(1), int(2)], &[int(-3), int(-6)]));
    }
}
