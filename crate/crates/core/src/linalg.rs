//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Elimination is ordinary Gauss-Jordan with the leftmost available pivot and
//! the first nonzero row below it, so every basis this module returns is a
//! deterministic function of its input.

use std::fmt;

use crate::field::{FieldElem, FieldSpec};

pub type Vector = Vec<FieldElem>;

pub fn zeros(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[FieldElem]) -> bool {
    v.iter().all(FieldElem::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [FieldElem], c: &FieldElem, v: &[FieldElem]) {
    assert_eq!(acc.len(), v.len(), "axpy length mismatch");
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub fn add_vec(a: &[FieldElem], b: &[FieldElem]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[FieldElem], b: &[FieldElem]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &FieldElem, v: &[FieldElem]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn neg_vec(v: &[FieldElem]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// Row-major dense matrix with entries from one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`Matrix::solve_affine`] when the system is consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    /// The solution with every free variable set to zero.
    pub particular: Vector,
    /// Basis of the homogeneous solution space, as from [`Matrix::kernel_basis`].
    pub kernel: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if rows are ragged.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vector>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zeros(self.field, self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: add_vec(&self.data, &rhs.data),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: sub_vec(&self.data, &rhs.data),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: neg_vec(&self.data),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: scale_vec(c, &self.data),
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// `[self; rhs]`
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Gauss-Jordan on the first `limit` columns; the remaining columns are
    /// carried along (used for augmented systems).
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(found) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, found);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for c in col..self.cols {
                    let v = self.get(row, c) * &inv;
                    self.set(row, c, v);
                }
            }
            let pivot_row: Vec<FieldElem> = self.row(row).to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let p = &pivot_row[c];
                    if !p.is_zero() {
                        let v = self.get(r, c) - &(&factor * p);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank and the (strictly increasing) pivot columns of the echelon form.
    pub fn rank_profile(&self) -> (usize, Vec<usize>) {
        let (_, pivots) = self.rref();
        (pivots.len(), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rank_profile().0
    }

    /// Basis of `{x : self * x = 0}`: one vector per free column, in
    /// increasing order, with that free variable set to 1 and the others 0.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Solves `self * x = b`. Free variables of the particular solution are 0.
    pub fn solve_affine(&self, b: &[FieldElem]) -> Option<AffineSolution> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let mut r = aug;
        let pivots = r.rref_in_place(self.cols);
        // Inconsistent iff some row has all-zero coefficients and a nonzero rhs.
        let rank = pivots.len();
        if (rank..self.rows).any(|row| !r.get(row, self.cols).is_zero()) {
            return None;
        }
        let mut particular = zeros(self.field, self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            particular[pc] = r.get(row, self.cols).clone();
        }
        let coeffs = r.submatrix(0..self.rows, 0..self.cols);
        Some(AffineSolution {
            particular,
            kernel: kernel_from_rref(&coeffs, &pivots),
        })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.field, n));
        let pivots = aug.rref_in_place(n);
        if pivots.len() != n {
            return None;
        }
        Some(aug.submatrix(0..n, n..2 * n))
    }

    /// Canonical basis of the column space: the nonzero rows of the reduced
    /// echelon form of the transpose.
    pub fn image_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vector> {
    let field = r.field();
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zeros(field, cols);
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors of common length `n`.
pub fn span_rank(field: FieldSpec, n: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, n, vectors.to_vec()).rank()
}

/// Whether `v` lies in the span of `basis` (all vectors of length `v.len()`).
pub fn in_span(field: FieldSpec, basis: &[Vector], v: &[FieldElem]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let n = v.len();
    let base = span_rank(field, n, basis);
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    span_rank(field, n, &with) == base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn mat(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    fn ints(field: FieldSpec, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn rank_profile_examples() {
        assert_eq!(Matrix::identity(q(), 3).rank_profile(), (3, vec![0, 1, 2]));
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(Matrix::zeros(f5, 2, 2).rank_profile(), (0, vec![]));
        assert_eq!(mat(q(), &[&[1, 2], &[2, 4]]).rank_profile(), (1, vec![0]));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 2).kernel_basis().is_empty());
        let k = Matrix::zeros(q(), 2, 3).kernel_basis();
        assert_eq!(k, vec![unit(q(), 3, 0), unit(q(), 3, 1), unit(q(), 3, 2)]);
        assert_eq!(mat(q(), &[&[1, 2]]).kernel_basis(), vec![ints(q(), &[-2, 1])]);
    }

    #[test]
    fn solve_examples() {
        let s = Matrix::identity(q(), 2).solve_affine(&ints(q(), &[3, 4])).unwrap();
        assert_eq!(s.particular, ints(q(), &[3, 4]));
        assert!(s.kernel.is_empty());

        let s = mat(q(), &[&[1, 1]]).solve_affine(&ints(q(), &[2])).unwrap();
        assert_eq!(s.particular, ints(q(), &[2, 0]));
        assert_eq!(s.kernel, vec![ints(q(), &[-1, 1])]);

        assert!(mat(q(), &[&[0, 0]]).solve_affine(&ints(q(), &[1])).is_none());
    }

    #[test]
    fn inverse_and_image() {
        let m = mat(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        assert!(mat(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
        let img = mat(q(), &[&[1, 2], &[2, 4]]).image_basis();
        assert_eq!(img, vec![ints(q(), &[1, 2])]);
    }

    #[test]
    fn span_membership() {
        let basis = vec![ints(q(), &[1, 0, 1])];
        assert!(in_span(q(), &basis, &ints(q(), &[3, 0, 3])));
        assert!(!in_span(q(), &basis, &ints(q(), &[0, 1, 0])));
        assert!(in_span(q(), &[], &ints(q(), &[0, 0, 0])));
    }
}
