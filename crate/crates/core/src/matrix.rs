//! Dense exact matrices and the elimination primitives shared by every solver.
//!
//! Arithmetic operators on `&Matrix` panic on shape or field mismatch, in the
//! same way `nalgebra` does; the `try_*` methods report the same conditions as
//! [`MatrixError`]. Solvers validate shapes once at problem construction and
//! then use the operators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{ExactScalar, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrices must have at least one row and one column")]
    Empty,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix over a single exact field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<ExactScalar>,
}

/// Reduced row echelon form together with the row operations that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: Matrix,
    pub rank: usize,
    /// Invertible, `transform * input == rref`.
    pub transform: Matrix,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        assert!(rows >= 1 && cols >= 1, "matrices must be at least 1x1");
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExactScalar,
    ) -> Matrix {
        assert!(rows >= 1 && cols >= 1, "matrices must be at least 1x1");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.field(), field, "entry ({i},{j}) is not in {field}");
                entries.push(v);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<ExactScalar>>) -> Result<Matrix, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(MatrixError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for v in row {
                if v.field() != field {
                    return Err(MatrixError::FieldMismatch(field, v.field()));
                }
                entries.push(v);
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field,
            entries,
        })
    }

    /// Convenience constructor from integer rows (reduced into `field`).
    ///
    /// Panics on ragged or empty input.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged rows");
        Matrix::from_fn(field, rows.len(), c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Diagonal matrix with the given integer entries.
    pub fn diag(field: FieldSpec, diag: &[i64]) -> Matrix {
        let n = diag.len();
        Matrix::from_fn(field, n, n, |i, j| {
            if i == j {
                field.from_i64(diag[i])
            } else {
                field.zero()
            }
        })
    }

    /// Standard basis matrix `E_ij`.
    pub fn unit(field: FieldSpec, rows: usize, cols: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        m.entries[i * cols + j] = field.one();
        m
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

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        assert_eq!(v.field(), self.field, "entry is not in {}", self.field);
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[ExactScalar] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<ExactScalar>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let entries = match self.field {
            // Residues fit in u32, so a k-term dot product of u64 products
            // is accumulated with a reduction per step.
            FieldSpec::Prime(p) => {
                let p = p as u64;
                let a: Vec<u64> = self.entries.iter().map(residue).collect();
                let b: Vec<u64> = other.entries.iter().map(residue).collect();
                let mut out = Vec::with_capacity(n * m);
                for i in 0..n {
                    for j in 0..m {
                        let mut acc = 0u64;
                        for t in 0..k {
                            acc = (acc + a[i * k + t] * b[t * m + j]) % p;
                        }
                        out.push(ExactScalar::Residue {
                            value: acc as u32,
                            modulus: p as u32,
                        });
                    }
                }
                out
            }
            FieldSpec::Rationals => {
                let mut out = Vec::with_capacity(n * m);
                for i in 0..n {
                    for j in 0..m {
                        let mut acc = self.field.zero();
                        for t in 0..k {
                            let x = &self.entries[i * k + t];
                            let y = &other.entries[t * m + j];
                            if !x.is_zero() && !y.is_zero() {
                                acc = &acc + &(x * y);
                            }
                        }
                        out.push(acc);
                    }
                }
                out
            }
        };
        Matrix {
            rows: n,
            cols: m,
            field: self.field,
            entries,
        }
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar,
    ) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &ExactScalar) -> Matrix {
        assert_eq!(s.field(), self.field);
        Matrix {
            entries: self.entries.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `self^e`, with `self^0 = I`.
    pub fn power(&self, e: u32) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        Ok(acc)
    }

    /// Gauss–Jordan elimination. The pivot of each column is the first
    /// nonzero entry at or below the current row; no magnitude pivoting.
    pub fn rref(&self) -> RrefResult {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.row_vecs();
        let mut t = Matrix::identity(self.field, r).row_vecs();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let Some(found) = (row..r).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, found);
            t.swap(row, found);
            let inv = a[row][col].inverse().expect("pivot is nonzero");
            if !inv.is_one() {
                for v in a[row].iter_mut().chain(t[row].iter_mut()) {
                    *v = &*v * &inv;
                }
            }
            let (pivot_a, pivot_t) = (a[row].clone(), t[row].clone());
            for i in 0..r {
                if i == row || a[i][col].is_zero() {
                    continue;
                }
                let factor = a[i][col].clone();
                subtract_multiple(&mut a[i], &factor, &pivot_a);
                subtract_multiple(&mut t[i], &factor, &pivot_t);
            }
            pivot_cols.push(col);
            row += 1;
        }
        let rebuild = |rows: Vec<Vec<ExactScalar>>| Matrix::from_rows(self.field, rows).expect("shape preserved");
        RrefResult {
            rref: rebuild(a),
            rank: pivot_cols.len(),
            transform: rebuild(t),
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self * v = 0}` as column vectors, one per free column
    /// in increasing column order.
    pub fn nullspace_basis(&self) -> Vec<Matrix> {
        let RrefResult { rref, pivot_cols, .. } = self.rref();
        nullspace_from_rref(&rref, &pivot_cols)
    }

    pub fn kron(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        let (br, bc) = other.shape();
        Ok(Matrix::from_fn(self.field, self.rows * br, self.cols * bc, |i, j| {
            self.get(i / br, j / bc) * other.get(i % br, j % bc)
        }))
    }

    /// Column-stacking vectorization into a `(rows*cols) x 1` matrix.
    pub fn vec(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows * self.cols, 1, |k, _| {
            self.get(k % self.rows, k / self.rows).clone()
        })
    }

    /// Inverse of [`Matrix::vec`].
    pub fn unvec(v: &Matrix, rows: usize, cols: usize) -> Result<Matrix, MatrixError> {
        if v.cols != 1 || v.rows != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot unvec a {}x{} matrix into {rows}x{cols}",
                v.rows, v.cols
            )));
        }
        Ok(Matrix::from_fn(v.field, rows, cols, |i, j| v.entries[j * rows + i].clone()))
    }

    /// Matrix whose columns are the given equally-sized column vectors.
    pub fn from_columns(field: FieldSpec, columns: &[Matrix]) -> Result<Matrix, MatrixError> {
        let first = columns.first().ok_or(MatrixError::Empty)?;
        let n = first.rows;
        if columns.iter().any(|c| c.cols != 1 || c.rows != n) {
            return Err(MatrixError::DimensionMismatch("columns must be equal-length vectors".into()));
        }
        Ok(Matrix::from_fn(field, n, columns.len(), |i, j| columns[j].get(i, 0).clone()))
    }

    /// Column `j` as an `rows x 1` matrix.
    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(blocks: &[Matrix]) -> Result<Matrix, MatrixError> {
        let first = blocks.first().ok_or(MatrixError::Empty)?;
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            first.check_field(b)?;
            if b.cols != first.cols {
                return Err(MatrixError::DimensionMismatch("vstack with different column counts".into()));
            }
            entries.extend(b.entries.iter().cloned());
            rows += b.rows;
        }
        Ok(Matrix {
            rows,
            cols: first.cols,
            field: first.field,
            entries,
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch("hstack with different row counts".into()));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }
}

fn residue(s: &ExactScalar) -> u64 {
    match s {
        ExactScalar::Residue { value, .. } => *value as u64,
        ExactScalar::Rational(_) => unreachable!("rational entry in a prime-field matrix"),
    }
}

/// Nullspace basis read off an RREF: for each free column `f`, set `x_f = 1`
/// and `x_{pivot_i} = -rref[i][f]`.
/// `target −= factor · pivot`, skipping zero pivot entries.
fn subtract_multiple(target: &mut [ExactScalar], factor: &ExactScalar, pivot: &[ExactScalar]) {
    for (v, p) in target.iter_mut().zip(pivot) {
        if !p.is_zero() {
            *v = &*v - &(factor * p);
        }
    }
}

pub(crate) fn nullspace_from_rref(rref: &Matrix, pivot_cols: &[usize]) -> Vec<Matrix> {
    let field = rref.field;
    let n = rref.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivot_cols {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Matrix::zeros(field, n, 1);
            v.set(f, 0, field.one());
            for (i, &p) in pivot_cols.iter().enumerate() {
                v.set(p, 0, -rref.get(i, f));
            }
            v
        })
        .collect()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}", self.field, self)
    }
}

impl fmt::Display for Matrix {
    /// `[[a, b], [c, d]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            entries: self.entries.iter().map(|v| -v).collect(),
            ..self.clone()
        }
    }
}
