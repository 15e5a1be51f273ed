//! Dense matrices over Q(q), used for module generator matrices and the
//! End(V) factors of realized operators.

use crate::qcoeff::RationalQ;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalQ>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![RationalQ::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zero(dim, dim);
        for i in 0..dim {
            m.set(i, i, RationalQ::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<RationalQ>) -> Self {
        let dim = entries.len();
        let mut m = Matrix::zero(dim, dim);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Matrix unit with a single 1 at (row, col), zero-based.
    pub fn unit(dim: usize, row: usize, col: usize) -> Self {
        let mut m = Matrix::zero(dim, dim);
        m.set(row, col, RationalQ::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalQ>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RationalQ {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalQ) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<RationalQ> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn scale(&self, c: &RationalQ) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[RationalQ]) -> Vec<RationalQ> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = RationalQ::zero();
                for c in 0..self.cols {
                    let e = self.get(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc = &acc + &(e * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &(a * b) + out.get(r, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::parse;

    #[test]
    fn unit_matrices_multiply_like_matrix_units() {
        let e12 = Matrix::unit(3, 0, 1);
        let e23 = Matrix::unit(3, 1, 2);
        assert_eq!(&e12 * &e23, Matrix::unit(3, 0, 2));
        assert!((&e23 * &e12).is_zero());
    }

    #[test]
    fn diagonal_detection() {
        let d = Matrix::diagonal(vec![parse("q").unwrap(), parse("q^-1").unwrap()]);
        assert!(d.is_diagonal());
        assert!(!d.is_identity());
        assert!(Matrix::identity(4).is_identity());
    }
}
