//! Dense exact matrices, row reduction, and echelon-canonical subspaces.

use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("system has no solution")]
    NoSolution,
}

/// Row-major matrix over one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
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
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, cols, rows)
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// zero-row matrices keep their width.
    pub fn from_rows_with_cols(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for x in row {
                if x.field() != field {
                    return Err(ScalarError::FieldMismatch(x.field(), field).into());
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn column_vector(field: FieldSpec, v: Vec<Scalar>) -> Self {
        Matrix {
            field,
            rows: v.len(),
            cols: 1,
            data: v,
        }
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Entries of a single-column matrix.
    pub fn into_vec(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(self.field, other.field).into());
        }
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|i| dot(self.row(i), v, self.field)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rref(&self) -> Rref {
        Rref::of(self)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

pub(crate) fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub(crate) fn unit_vector(field: FieldSpec, len: usize, at: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    v[at] = field.one();
    v
}

/// Sign convention for basis vectors: over the rationals the first nonzero
/// entry is made positive.
pub(crate) fn normalize_sign(v: &mut [Scalar]) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(Scalar::is_negative) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

/// Reduced row echelon form of a matrix together with the row operations
/// that produced it (`transform * original = reduced`).
///
/// Pivots are chosen column by column, taking the first row at or below the
/// current pivot row with a nonzero entry.
#[derive(Debug, Clone)]
pub struct Rref {
    reduced: Matrix,
    transform: Matrix,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn of(a: &Matrix) -> Rref {
        let field = a.field;
        let mut r = a.clone();
        let mut t = Matrix::identity(field, a.rows);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..a.cols {
            if prow == a.rows {
                break;
            }
            let Some(found) = (prow..a.rows).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            if found != prow {
                swap_rows(&mut r, found, prow);
                swap_rows(&mut t, found, prow);
            }
            let inv = r.get(prow, col).inv().expect("pivot is nonzero");
            scale_row(&mut r, prow, &inv);
            scale_row(&mut t, prow, &inv);
            for i in 0..a.rows {
                if i != prow && !r.get(i, col).is_zero() {
                    let factor = -r.get(i, col);
                    add_row_multiple(&mut r, i, prow, &factor);
                    add_row_multiple(&mut t, i, prow, &factor);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref {
            reduced: r,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduced(&self) -> &Matrix {
        &self.reduced
    }

    /// Row operations with `transform * original = reduced`; the inverse
    /// when the original is square and invertible.
    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    /// Nonzero rows of the reduced matrix.
    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rank()).map(|i| self.reduced.row(i).to_vec()).collect()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column in increasing
    /// column order, sign-normalized.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let field = self.reduced.field;
        let cols = self.reduced.cols;
        let mut out = Vec::new();
        let mut next_pivot = 0;
        for free in 0..cols {
            if next_pivot < self.pivots.len() && self.pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = unit_vector(field, cols, free);
            for (r, &pc) in self.pivots.iter().enumerate() {
                v[pc] = -self.reduced.get(r, free);
            }
            normalize_sign(&mut v);
            out.push(v);
        }
        out
    }

    /// One solution of `A x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.transform.rows, "right-hand side length");
        let tb = self.transform.mul_vec(b);
        if tb[self.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![self.reduced.field.zero(); self.reduced.cols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[r].clone();
        }
        Some(x)
    }

    /// A functional `y` with `y A = 0` and `y b != 0`, certifying that
    /// `A x = b` has no solution.
    pub fn obstruction(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let tb = self.transform.mul_vec(b);
        let r = (self.rank()..tb.len()).find(|&i| !tb[i].is_zero())?;
        Some(self.transform.row(r).to_vec())
    }
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn scale_row(m: &mut Matrix, i: usize, c: &Scalar) {
    for j in 0..m.cols {
        let idx = i * m.cols + j;
        m.data[idx] = &m.data[idx] * c;
    }
}

fn add_row_multiple(m: &mut Matrix, target: usize, source: usize, c: &Scalar) {
    for j in 0..m.cols {
        let s = &m.data[source * m.cols + j];
        if !s.is_zero() {
            let add = c * s;
            let idx = target * m.cols + j;
            m.data[idx] = &m.data[idx] + &add;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub solution: Matrix,
    pub nullspace_basis: Vec<Matrix>,
}

/// Solves `A x = b` for a single right-hand column.
pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<LinearSolution, LinalgError> {
    if a.field != b.field {
        return Err(ScalarError::FieldMismatch(a.field, b.field).into());
    }
    if b.cols != 1 || b.rows != a.rows {
        return Err(LinalgError::Shape(format!(
            "A is {}x{}, b is {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let rref = a.rref();
    let x = rref.solve(&b.data).ok_or(LinalgError::NoSolution)?;
    Ok(LinearSolution {
        solution: Matrix::column_vector(a.field, x),
        nullspace_basis: rref
            .nullspace()
            .into_iter()
            .map(|v| Matrix::column_vector(a.field, v))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankNullspace {
    pub rank: usize,
    pub nullspace_basis: Vec<Matrix>,
}

pub fn rank_nullspace(a: &Matrix) -> RankNullspace {
    let rref = a.rref();
    RankNullspace {
        rank: rref.rank(),
        nullspace_basis: rref
            .nullspace()
            .into_iter()
            .map(|v| Matrix::column_vector(a.field, v))
            .collect(),
    }
}

/// A subspace of `k^ambient`, stored by its reduced echelon basis. Two
/// subspaces are equal iff their stored bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        let m = Matrix::from_rows_with_cols(field, ambient, rows).expect("vector length matches ambient dimension");
        let rref = m.rref();
        Subspace {
            field,
            ambient,
            basis: rref.basis_rows(),
            pivots: rref.pivots().to_vec(),
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, std::iter::empty())
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, (0..ambient).map(|i| unit_vector(field, ambient, i)))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` lies outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![self.field.zero(); self.ambient];
        for (ci, b) in c.iter().zip(&self.basis) {
            axpy(&mut rebuilt, ci, b);
        }
        (rebuilt == v).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, b);
        }
        out
    }

    /// Rows are functionals whose common kernel is exactly this subspace.
    pub fn annihilator(&self) -> Matrix {
        let m = Matrix::from_rows_with_cols(self.field, self.ambient, self.basis.clone()).expect("basis shape");
        Matrix::from_rows_with_cols(self.field, self.ambient, m.rref().nullspace()).expect("nullspace shape")
    }

    /// First ambient unit vector lying outside the subspace.
    pub fn first_missing_unit(&self) -> Option<Vec<Scalar>> {
        (0..self.ambient)
            .map(|i| unit_vector(self.field, self.ambient, i))
            .find(|e| !self.contains(e))
    }
}
