use std::fmt;

use super::{Felt, FieldSpec};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field, self.to_codes())
    }
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Felt::ONE;
        }
        m
    }

    /// Builds from element codes; every row must have length `cols`.
    pub fn from_codes(field: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for &c in row {
                data.push(field.element(c)?);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_felts(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Felt>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &x in &data {
            field.element(x.0)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Felt {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Felt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Felt] {
        &self.data
    }

    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.0).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Vertical concatenation of many matrices with `cols` columns.
    pub fn stack_all<'a>(
        field: &FieldSpec,
        cols: usize,
        parts: impl IntoIterator<Item = &'a Matrix>,
    ) -> Result<Matrix> {
        let mut out = Matrix::zeros(field, 0, cols);
        for part in parts {
            out.check_same_field(part)?;
            if part.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "cannot stack {} columns on {cols}",
                    part.cols
                )));
            }
            out.data.extend_from_slice(&part.data);
            out.rows += part.rows;
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Appends zero rows until the matrix has `rows` rows.
    pub fn pad_rows(&self, rows: usize) -> Matrix {
        let mut out = self.clone();
        if rows > out.rows {
            out.data.resize(rows * out.cols, Felt::ZERO);
            out.rows = rows;
        }
        out
    }

    /// Embeds the columns at offset `at` of a zero matrix with `cols` columns.
    pub fn widen(&self, cols: usize, at: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, at + c, self.get(r, c));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form: pivots are taken left to right, each from
    /// the first row at or below the current one with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn rowspace_contains(&self, other: &Matrix) -> Result<bool> {
        let stacked = self.stack(other)?;
        Ok(stacked.rank() == self.rank())
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_basis(&self) -> Matrix {
        let rr = self.rref();
        let idx: Vec<usize> = (0..rr.rank).collect();
        rr.matrix.select_rows(&idx)
    }

    /// Finds `X` with `X * self = target`, if one exists. When `self` has
    /// full row rank the solution is unique.
    pub fn solve_left(&self, target: &Matrix) -> Result<Option<Matrix>> {
        self.check_same_field(target)?;
        if self.cols != target.cols {
            return Err(Error::DimensionMismatch(format!(
                "target has {} columns, expected {}",
                target.cols, self.cols
            )));
        }
        // Transposed system: self^T * X^T = target^T, solved on [self^T | target^T].
        let a_t = self.transpose();
        let b_t = target.transpose();
        let n_vars = a_t.cols;
        let mut aug = Matrix::zeros(&self.field, a_t.rows, n_vars + b_t.cols);
        for r in 0..a_t.rows {
            for c in 0..n_vars {
                aug.set(r, c, a_t.get(r, c));
            }
            for c in 0..b_t.cols {
                aug.set(r, n_vars + c, b_t.get(r, c));
            }
        }
        let rr = aug.rref();
        if rr.pivots.iter().any(|&p| p >= n_vars) {
            return Ok(None);
        }
        let mut x_t = Matrix::zeros(&self.field, n_vars, b_t.cols);
        for (row, &p) in rr.pivots.iter().enumerate() {
            for c in 0..b_t.cols {
                x_t.set(p, c, rr.matrix.get(row, n_vars + c));
            }
        }
        Ok(Some(x_t.transpose()))
    }
}
