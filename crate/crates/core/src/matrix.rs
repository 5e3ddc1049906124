//! Dense exact rational matrices and the elimination kernels behind them.

use crate::error::{LabError, Result};
use crate::field::{rat, with_fallback, Field, Rational, Q128};

/// Row-major dense matrix of [`Rational`]s. Zero rows or zero columns are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![rat(0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Vec<Rational>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(LabError::input(format!(
                "matrix data does not have shape {rows}x{cols}"
            )));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries: data.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        RationalMatrix {
            rows,
            cols,
            entries: data.iter().map(|&x| rat(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Field::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(LabError::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if Field::is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !Field::is_zero(b) {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    fn same_shape(&self, other: &RationalMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LabError::input(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(LabError::input("hstack needs equal row counts"));
        }
        let data = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        Self::from_rows(self.rows, self.cols + other.cols, data)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(LabError::input("vstack needs equal column counts"));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        matrix_rank(self)
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (reduced, pivots) = if self.rows == 0 {
            (Vec::new(), Vec::new())
        } else {
            rref(self.to_rows()).expect("exact arithmetic")
        };
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::from_integer(0.into()); self.cols];
                v[free] = rat(1);
                for (row, &p) in reduced.iter().zip(&pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub(crate) fn grid<F: Field>(&self) -> Option<Vec<Vec<F>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(F::from_rational).collect())
            .collect()
    }
}

/// Exact rank of a rational matrix.
pub fn matrix_rank(m: &RationalMatrix) -> usize {
    with_fallback(
        || m.grid::<Q128>().and_then(rank_in_place),
        || m.grid::<Rational>().and_then(rank_in_place),
    )
}

/// Gaussian elimination on a dense grid; `None` signals arithmetic overflow.
/// Only rows with a nonzero entry in the pivot column are touched, which keeps
/// the banded convolution matrices cheap.
pub fn rank_in_place<F: Field>(mut rows: Vec<Vec<F>>) -> Option<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].div(&prow[col])?;
            row[col] = F::zero();
            for j in col + 1..ncols {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub(&factor.mul(&prow[j])?)?;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Determinant of a square grid by elimination; `None` on overflow.
pub fn det_in_place<F: Field>(mut rows: Vec<Vec<F>>) -> Option<F> {
    let n = rows.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
            return Some(F::zero());
        };
        if pivot != col {
            rows.swap(col, pivot);
            det = det.neg()?;
        }
        det = det.mul(&rows[col][col])?;
        let (head, tail) = rows.split_at_mut(col + 1);
        let prow = &head[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].div(&prow[col])?;
            for j in col + 1..n {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub(&factor.mul(&prow[j])?)?;
                }
            }
        }
    }
    Some(det)
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>) -> Option<(Vec<Vec<F>>, Vec<usize>)> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = F::one().div(&rows[rank][col])?;
        for j in col..ncols {
            rows[rank][j] = rows[rank][j].mul(&inv)?;
        }
        let prow = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..ncols {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub(&factor.mul(&prow[j])?)?;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Some((rows, pivots))
}
