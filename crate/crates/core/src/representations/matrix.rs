use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::Cyclotomic;

/// Dense matrix with exact cyclotomic entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<Cyclotomic>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same nonzero length.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("rows must be nonempty and of equal length".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
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

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> Result<usize> {
        let mut basis = Echelon::new(self.cols);
        for i in 0..self.rows {
            basis.insert(self.row(i).to_vec())?;
        }
        Ok(basis.rank())
    }
}

impl fmt::Display for Matrix {
    /// `diag(a, b, ...)` for diagonal matrices of size at least two,
    /// `[[a, b], [c, d]]` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows > 1 && self.is_diagonal() {
            let parts: Vec<String> = (0..self.rows).map(|i| self.get(i, i).to_string()).collect();
            return write!(f, "diag({})", parts.join(", "));
        }
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let parts: Vec<String> = self.row(i).iter().map(Cyclotomic::to_string).collect();
                format!("[{}]", parts.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Incrementally built row echelon basis over the cyclotomic numbers.
///
/// Each stored row has a unit pivot and vanishes at the pivots of all rows
/// inserted before it, so reducing against the rows in insertion order clears
/// every pivot.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<Cyclotomic>)>,
}

impl Echelon {
    pub(crate) fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the basis if it is independent; returns whether it was.
    pub(crate) fn insert(&mut self, mut v: Vec<Cyclotomic>) -> Result<bool> {
        if v.len() != self.width {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of width {}",
                v.len(),
                self.width
            )));
        }
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(&f * b);
                }
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].inv()?;
        for a in v.iter_mut() {
            if !a.is_zero() {
                *a = &*a * &inv;
            }
        }
        self.rows.push((p, v));
        Ok(true)
    }
}
