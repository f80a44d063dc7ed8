use std::fmt;

use num_integer::Integer;
use num_traits::One;

use super::ExactScalar;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: ExactScalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
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

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Exact determinant.
    ///
    /// Each row is scaled by the lcm of its denominators, Bareiss'
    /// fraction-free elimination runs over the integers, and the scale is
    /// divided back out at the end.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut scale = T::Int::one();
        let mut m: Vec<Vec<T::Int>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let l = row
                .iter()
                .fold(T::Int::one(), |acc, x| acc.lcm(&x.denom_int()));
            m.push(
                row.iter()
                    .map(|x| x.numer_int() * (l.clone() / x.denom_int()))
                    .collect(),
            );
            scale = scale * l;
        }
        let det = bareiss(m);
        Ok(T::ratio(det, scale))
    }

    /// Solves `A x = b` exactly by Gaussian elimination with pivoting on the
    /// first nonzero entry.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if !self.is_square() {
            return Err(Error::Dimension("solve needs a square matrix".into()));
        }
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        eliminate(&mut aug, n)?;
        Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse needs a square matrix".into()));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
                r
            })
            .collect();
        eliminate(&mut aug, n)?;
        Matrix::new(n, n, aug.into_iter().flat_map(|r| r.into_iter().skip(n)).collect())
    }
}

/// Gauss-Jordan on the first `n` columns of an augmented system.
fn eliminate<T: ExactScalar>(aug: &mut [Vec<T>], n: usize) -> Result<()> {
    let width = aug.first().map_or(0, Vec::len);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or(Error::Singular)?;
        aug.swap(col, pivot);
        let inv = T::one() / aug[col][col].clone();
        for j in col..width {
            aug[col][j] = aug[col][j].clone() * inv.clone();
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for j in col..width {
                let delta = f.clone() * aug[col][j].clone();
                aug[r][j] = aug[r][j].clone() - delta;
            }
        }
    }
    Ok(())
}

/// Fraction-free determinant of an integer matrix.
pub(crate) fn bareiss<I: Integer + Clone>(mut m: Vec<Vec<I>>) -> I {
    let n = m.len();
    if n == 0 {
        return I::one();
    }
    let mut negate = false;
    let mut prev = I::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return I::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        I::zero() - d
    } else {
        d
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
