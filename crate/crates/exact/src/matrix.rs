//! Dense matrices over an exact ring.
//!
//! Entries are stored in canonical form, so a matrix is itself a valid hash
//! key (used for group closures).

use std::fmt;

use crate::error::ExactError;
use crate::poly::MultiPoly;
use crate::scalar::{Conjugate, RingOps, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: RingOps> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn filled(rows: usize, cols: usize, v: S) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<T: RingOps, F: Fn(&S) -> T>(&self, f: F) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: Option<S> = None;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        if acc.is_none() && k + 1 == self.cols {
                            acc = Some(a.mul_ref(b));
                        }
                        continue;
                    }
                    let t = a.mul_ref(b);
                    acc = Some(match acc {
                        Some(s) => s.add_ref(&t),
                        None => t,
                    });
                }
                data.push(acc.unwrap_or_else(|| self.get(i, 0).sub_ref(self.get(i, 0))));
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Matrix product; panics on a dimension mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix dimensions")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(RingOps::neg_ref)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingOps::is_zero)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == skip_row {
                continue;
            }
            for j in 0..self.cols {
                if j != skip_col {
                    data.push(self.get(i, j).clone());
                }
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Laplace expansion along the first row. Works over any commutative
    /// ring (polynomial entries included); meant for `n <= 4`.
    pub fn det_cofactor(&self) -> Result<S, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        assert!(self.rows > 0, "empty determinant");
        if self.rows == 1 {
            return Ok(self.data[0].clone());
        }
        let mut acc: Option<S> = None;
        for j in 0..self.cols {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let term = a.mul_ref(&self.minor(0, j).det_cofactor()?);
            acc = Some(match acc {
                None if j % 2 == 0 => term,
                None => term.neg_ref(),
                Some(s) if j % 2 == 0 => s.add_ref(&term),
                Some(s) => s.sub_ref(&term),
            });
        }
        Ok(acc.unwrap_or_else(|| self.data[0].sub_ref(&self.data[0])))
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn identity(n: usize, one: &S) -> Self {
        let zero = one.zero_like();
        let mut m = Matrix::filled(n, n, zero);
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    pub fn one_like(&self) -> S {
        self.data[0].one_like()
    }

    pub fn identity_like(&self) -> Self {
        Matrix::identity(self.rows, &self.one_like())
    }

    pub fn trace(&self) -> S {
        (1..self.rows).fold(self.get(0, 0).clone(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    /// Exact determinant. Cofactor expansion up to 3x3, Gaussian elimination
    /// beyond; both avoid any approximation.
    pub fn det(&self) -> Result<S, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows <= 3 {
            return self.det_cofactor();
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.one_like();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(det.zero_like());
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = det.neg_ref();
            }
            let p = a.get(col, col).clone();
            det = det.mul_ref(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).mul_ref(&pinv);
                for c in col..n {
                    let v = a.get(r, c).sub_ref(&f.mul_ref(a.get(col, c)));
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(piv, row);
            let inv = a.get(row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = a.get(row, c).mul_ref(&inv);
                a.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in col..self.cols {
                    let v = a.get(r, c).sub_ref(&f.mul_ref(a.get(row, c)));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = one.clone();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).neg_ref();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let one = self.one_like();
        let zero = one.zero_like();
        let mut aug = Matrix::filled(n, 2 * n, zero);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, one.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ExactError::NotInvertible);
        }
        let mut inv = Matrix::filled(n, n, one.zero_like());
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// `self^k` for any integer `k` (negative powers through the inverse).
    pub fn pow(&self, k: i64) -> Result<Self, ExactError> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `Some(c)` when the matrix is `c * I`.
    pub fn as_scalar(&self) -> Option<S> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let ok = if i == j { *v == c } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// `Some(c)` with `rhs = c * self` and `c != 0`: projective equality with
    /// an explicit witness scalar.
    pub fn projective_ratio(&self, rhs: &Self) -> Option<S> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return None;
        }
        let k = self.data.iter().position(|v| !v.is_zero())?;
        let c = rhs.data[k].div_ref(&self.data[k])?;
        if c.is_zero() {
            return None;
        }
        let ok = self
            .data
            .iter()
            .zip(&rhs.data)
            .all(|(a, b)| a.mul_ref(&c) == *b);
        ok.then_some(c)
    }

    /// Coefficients of `det(t I - M)`, constant term first.
    pub fn charpoly(&self) -> Result<Vec<S>, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let one = self.one_like();
        let t = MultiPoly::var(1, 0, one.clone());
        let mut m: Matrix<MultiPoly<S>> =
            Matrix::filled(n, n, MultiPoly::zero(1));
        for i in 0..n {
            for j in 0..n {
                let c = MultiPoly::constant(1, self.get(i, j).neg_ref());
                m.set(i, j, if i == j { t.add(&c) } else { c });
            }
        }
        let p = m.det_cofactor()?;
        Ok((0..=n as u32)
            .map(|k| p.coeff(&[k]).cloned().unwrap_or_else(|| one.zero_like()))
            .collect())
    }
}

impl<S: Scalar + Conjugate> Matrix<S> {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().map(Conjugate::conj)
    }
}

impl<S: RingOps + fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl<S: RingOps + fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;
    use crate::rational::{int, Rational};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::identity(3, &int(1)).det().unwrap(), int(1));
        let j = qm(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(j.det().unwrap(), int(1));
        let z = |k| Cyclotomic::zeta_pow(7, k);
        let zero = Cyclotomic::zero(7);
        let t = Matrix::from_rows(vec![
            vec![z(1), zero.clone(), zero.clone()],
            vec![zero.clone(), z(2), zero.clone()],
            vec![zero.clone(), zero.clone(), z(4)],
        ]);
        assert!(t.det().unwrap().is_one());
        let a = qm(&[&[2, 1, 0, 3], &[1, 1, 1, 1], &[0, 5, 2, 1], &[4, 0, 0, 1]]);
        assert_eq!(a.det().unwrap(), a.det_cofactor().unwrap());
    }

    #[test]
    fn non_square_rejected() {
        let m = qm(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(m.det(), Err(ExactError::NotSquare { .. })));
        assert!(matches!(m.charpoly(), Err(ExactError::NotSquare { .. })));
    }

    #[test]
    fn kernel_and_inverse() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let v = Matrix::from_rows(k[0].iter().map(|x| vec![x.clone()]).collect());
        assert!(m.mul(&v).is_zero());
        assert_eq!(m.inverse(), Err(ExactError::NotInvertible));
        let g = qm(&[&[2, 1], &[1, 1]]);
        assert_eq!(g.mul(&g.inverse().unwrap()), Matrix::identity(2, &int(1)));
        assert_eq!(g.pow(-2).unwrap().mul(&g.pow(2).unwrap()), Matrix::identity(2, &int(1)));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^3 - 2t^2 + 3t - 5
        let c = qm(&[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]);
        assert_eq!(c.charpoly().unwrap(), vec![int(-5), int(3), int(-2), int(1)]);
    }

    #[test]
    fn projective_ratio_witness() {
        let m = qm(&[&[1, 2], &[0, 3]]);
        let n = m.scale(&int(-4));
        assert_eq!(m.projective_ratio(&n), Some(int(-4)));
        assert_eq!(m.projective_ratio(&Matrix::identity(2, &int(1))), None);
        assert_eq!(n.scale(&int(0)).as_scalar(), Some(int(0)));
    }
}
