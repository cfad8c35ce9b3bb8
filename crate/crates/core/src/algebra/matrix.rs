//! Dense matrices over an exact scalar ring, with exact determinants:
//! Bareiss fraction-free elimination over integral domains and ordinary
//! Gaussian elimination over fields.

use super::{Field, IntegralDomain, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc.add(&self[(i, k)].mul(&other[(k, j)]));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Delete one column.
    pub fn without_col(&self, col: usize) -> Self {
        Matrix::from_fn(self.rows, self.cols - 1, |i, j| {
            self[(i, if j < col { j } else { j + 1 })].clone()
        })
    }

    /// Keep the given columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Compose an r x c grid of equally sized blocks.
    pub fn from_blocks(grid: &[Vec<Matrix<T>>]) -> Self {
        let br = grid[0][0].rows;
        let bc = grid[0][0].cols;
        let rows = grid.len() * br;
        let cols = grid[0].len() * bc;
        Matrix::from_fn(rows, cols, |i, j| {
            grid[i / br][j / bc][(i % br, j % bc)].clone()
        })
    }
}

impl<T: IntegralDomain> Matrix<T> {
    /// Exact determinant by Bareiss fraction-free elimination; every
    /// division is by a previous pivot and stays in the domain.
    pub fn det_bareiss(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)].clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = !sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = if prev.is_one() { v } else { v.exact_div(&prev) };
                }
                m[i][k] = T::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }
}

impl<T: Field> Matrix<T> {
    /// Exact determinant by Gaussian elimination over a field.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)].clone()).collect())
            .collect();
        let mut det = T::one();
        for k in 0..n {
            let piv = match (k..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => p,
                None => return Ok(T::zero()),
            };
            if piv != k {
                m.swap(k, piv);
                det = det.neg();
            }
            det = det.mul(&m[k][k]);
            let inv = m[k][k].inv();
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = m[i][k].mul(&inv);
                for j in k..n {
                    m[i][j] = m[i][j].sub(&f.mul(&m[k][j]));
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1
    }

    /// (echelon form, rank, pivot column list)
    pub fn row_echelon(&self) -> (Matrix<T>, usize, Vec<usize>) {
        let mut m: Vec<Vec<T>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].clone()).collect())
            .collect();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let piv = match (r..self.rows).find(|&i| !m[i][c].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            m.swap(r, piv);
            let inv = m[r][c].inv();
            for j in c..self.cols {
                m[r][j] = m[r][j].mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..self.cols {
                        m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = r;
        let data = m.into_iter().flatten().collect();
        (Matrix::new(self.rows, self.cols, data), rank, pivots)
    }

    /// Solve `self * x = rhs` for all rhs columns; None if inconsistent
    /// or underdetermined columns are needed (returns one solution with
    /// free variables set to zero if consistent).
    pub fn solve(&self, rhs: &Matrix<T>) -> Option<Matrix<T>> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hcat(rhs);
        let (ech, _, pivots) = aug.row_echelon();
        // inconsistent if a pivot lands in the rhs block
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(c, j)] = ech[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
