use std::fmt;

use super::scalar::{axpy, FieldSpec, Scalar};
use super::LinalgError;

/// A dense matrix over one exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
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
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(field);
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and entries from
    /// another field.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::ShapeMismatch(format!(
                    "ragged rows: expected {cols} columns, found {}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(LinalgError::FieldMismatch {
                        expected: field,
                        found: s.field(),
                    });
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(
        field: FieldSpec,
        rows: usize,
        columns: &[Vec<Scalar>],
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::ShapeMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, s) in c.iter().enumerate() {
                if s.field() != field {
                    return Err(LinalgError::FieldMismatch {
                        expected: field,
                        found: s.field(),
                    });
                }
                m.data[i * m.cols + j] = s.clone();
            }
        }
        Ok(m)
    }

    /// Integer matrix reduced into `field`.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer rows");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = Scalar::from_i64(field, v);
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry from another field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                axpy(dst, &self.data[i * self.cols + k], other.row(k));
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::ShapeMismatch("cannot add matrices of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { data, ..self.clone() }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch("hstack row counts differ".into()));
        }
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * out.cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with pivots taken in `order` (each pivot is the
    /// earliest column in `order` that is nonzero in the remaining rows).
    /// Returns the reduced rows (zero rows dropped) and pivot columns, one per row.
    pub(crate) fn reduce_rows(&self, order: &[usize]) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for &c in order {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = rows[next][c].inverse().expect("nonzero pivot");
            if !inv.is_one() {
                for s in rows[next].iter_mut() {
                    if !s.is_zero() {
                        *s = &*s * &inv;
                    }
                }
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && !row[c].is_zero() {
                    let f = -&row[c];
                    axpy(row, &f, &pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        rows.truncate(next);
        (rows, pivots)
    }

    /// Reduced row echelon form (lowest-index pivots) and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let order: Vec<usize> = (0..self.cols).collect();
        let (rows, pivots) = self.reduce_rows(&order);
        let mut m = Self::zeros(self.field, self.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, s) in r.into_iter().enumerate() {
                m.data[i * self.cols + j] = s;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let order: Vec<usize> = (0..self.cols).collect();
        self.reduce_rows(&order).1.len()
    }

    /// Columns spanning the right null space, one per free column of the RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let order: Vec<usize> = (0..self.cols).collect();
        let (rows, pivots) = self.reduce_rows(&order);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(self.field, self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.data[f * k.cols + col] = Scalar::one(self.field);
            for (r, &p) in pivots.iter().enumerate() {
                let v = &rows[r][f];
                if !v.is_zero() {
                    k.data[p * k.cols + col] = -v;
                }
            }
        }
        k
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
