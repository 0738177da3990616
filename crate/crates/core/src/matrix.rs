//! Dense matrices and the doubly stochastic / permutation / d-stochastic predicates.
//!
//! Vectors are row vectors throughout: a matrix acts on weights as `w · M`.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weights::{check_permutation, Weights};

/// Dense row-major matrix. Square matrices double as the carrier for
/// averaging operators; rectangular ones hold multi-attribute allocations.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::InvalidMatrix("matrix must be non-empty".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// The matrix with every entry `1/n`.
    pub fn constant(n: usize) -> Self {
        let v = T::from_ratio(1, n as i64);
        Self::from_fn(n, n, |_, _| v.clone())
    }

    /// Permutation matrix `Π` with `w · Π == w.permuted(perm)`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        check_permutation(perm, perm.len())?;
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.data[p * n + i] = T::one();
        }
        Ok(m)
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

    /// Order of a square matrix.
    pub fn order(&self) -> usize {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().cloned().fold(T::zero(), |a, b| a + b))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<T> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |a, i| a + self.get(i, j).clone()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
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
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// `t * self + (1 - t) * other`.
    pub fn mix(&self, other: &Self, t: &T) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let s = T::one() - t.clone();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| t.clone() * a.clone() + s.clone() * b.clone())
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// Squared Frobenius norm.
    pub fn frobenius_sq(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Row vector times matrix, `v · M`.
    pub fn left_mul(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch(v.len(), self.rows));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, x)| acc + x.clone() * self.get(i, j).clone())
            })
            .collect())
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::to_f64_lossy).collect() }
    }
}

impl<T: Scalar> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        self.get(i, j)
    }
}

fn nonnegative<T: Scalar>(m: &Matrix<T>) -> bool {
    m.entries().all(|x| !x.is_negative() || x.is_approx_zero())
}

fn all_one<T: Scalar>(v: &[T]) -> bool {
    v.iter().all(|s| s.approx_eq(&T::one()))
}

/// Non-negative square matrix with unit row and column sums.
pub fn is_doubly_stochastic<T: Scalar>(m: &Matrix<T>) -> bool {
    m.is_square() && nonnegative(m) && all_one(&m.row_sums()) && all_one(&m.col_sums())
}

/// Every entry in `{0, 1}` with exactly one unit per row and column.
pub fn is_permutation<T: Scalar>(m: &Matrix<T>) -> bool {
    if !m.is_square() {
        return false;
    }
    let binary = m.entries().all(|x| x.is_zero() || x.is_one());
    binary && all_one(&m.row_sums()) && all_one(&m.col_sums())
}

/// Non-negative, `d · M = d`, and unit row sums.
pub fn is_d_stochastic<T: Scalar>(m: &Matrix<T>, d: &Weights<T>) -> Result<bool> {
    if !m.is_square() {
        return Ok(false);
    }
    if d.len() != m.order() {
        return Err(Error::LengthMismatch(d.len(), m.order()));
    }
    let fixed = m.left_mul(d.as_slice())?.iter().zip(d.as_slice()).all(|(a, b)| a.approx_eq(b));
    Ok(nonnegative(m) && fixed && all_one(&m.row_sums()))
}

/// A validated doubly stochastic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublyStochastic<T>(Matrix<T>);

impl<T: Scalar> DoublyStochastic<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if is_doubly_stochastic(&m) {
            Ok(Self(m))
        } else {
            Err(Error::InvalidMatrix("matrix is not doubly stochastic".into()))
        }
    }

    pub(crate) fn from_valid(m: Matrix<T>) -> Self {
        debug_assert!(is_doubly_stochastic(&m));
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn constant(n: usize) -> Self {
        Self(Matrix::constant(n))
    }

    pub fn permutation(perm: &[usize]) -> Result<Self> {
        Matrix::permutation(perm).map(Self)
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// Products of doubly stochastic matrices stay doubly stochastic.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.0.mul(&other.0).map(Self)
    }
}

/// `w · M`; the result is majorized by `w`.
pub fn apply<T: Scalar>(w: &Weights<T>, m: &DoublyStochastic<T>) -> Result<Weights<T>> {
    if w.len() != m.order() {
        return Err(Error::LengthMismatch(w.len(), m.order()));
    }
    let out = m.matrix().left_mul(w.as_slice())?;
    Ok(Weights::from_valid(out, w.labels().map(<[String]>::to_vec)))
}
