//! Dense linear algebra kernels.
//!
//! Matrices are stored column-major: entry `(i, j)` lives at
//! `data[j * rows + i]`, so each column is a contiguous slice. Sizes here
//! stay at desk scale (a few hundred rows), so there is no blocking and
//! no sparse storage.

mod lu;
mod norms;
mod qr;
mod svd;

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use lu::LuFactors;
pub use norms::{l1_operator_norm, norm, NormKind};
pub use qr::{least_squares, orthonormal_basis, RANK_TOLERANCE};
pub use svd::{extreme_singular_values, singular_values, JACOBI_MAX_SWEEPS};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseVector<T> {
    data: Vec<T>,
}

impl<T: Scalar> DenseVector<T> {
    /// Wraps `data`, rejecting non-finite entries.
    pub fn new(data: Vec<T>) -> Result<Self> {
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "vector entry {pos} is not finite"
            )));
        }
        Ok(Self { data })
    }

    pub(crate) fn from_vec_unchecked(data: Vec<T>) -> Self {
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            data: vec![T::zero(); n],
        }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> T) -> Self {
        Self {
            data: (0..n).map(f).collect(),
        }
    }

    /// Indicator vector of `support` in dimension `n`.
    pub fn indicator(n: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(n);
        for &i in support {
            v.data[i] = T::one();
        }
        v
    }

    pub fn basis(n: usize, i: usize) -> Self {
        Self::indicator(n, &[i])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.data.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.data, &other.data)
    }

    pub fn norm(&self, kind: NormKind) -> T {
        norm(&self.data, kind)
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Entries at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            data: indices.iter().map(|&i| self.data[i]).collect(),
        }
    }

    /// Lowest index attaining `max |x(i)|`.
    pub fn argmax_abs(&self) -> usize {
        let mut best = 0;
        for (i, x) in self.data.iter().enumerate() {
            if x.abs() > self.data[best].abs() {
                best = i;
            }
        }
        best
    }

    pub fn cast<U: Scalar>(&self) -> DenseVector<U> {
        DenseVector {
            data: self.data.iter().map(|x| U::lit(x.as_f64())).collect(),
        }
    }
}

impl<T> Index<usize> for DenseVector<T> {
    type Output = T;
    #[inline]
    fn index(&self, i: usize) -> &T {
        &self.data[i]
    }
}

impl<T> IndexMut<usize> for DenseVector<T> {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.data[i]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from column-major storage.
    pub fn from_column_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims("from_column_major", rows * cols, data.len()));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "matrix entry ({}, {}) is not finite",
                pos % rows.max(1),
                pos / rows.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from a list of rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let d = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == d), "ragged rows");
        Self::from_fn(n, d, |i, j| rows[i][j])
    }

    pub fn from_columns(columns: &[DenseVector<T>]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.len());
        let mut data = Vec::with_capacity(rows * columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::dims(
                    "from_columns",
                    format!("column {j} of length {rows}"),
                    c.len(),
                ));
            }
            data.extend_from_slice(c.as_slice());
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Diagonal matrix `rows x cols` with `diag` on the leading diagonal.
    pub fn from_diagonal(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &x) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = x;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column-major storage.
    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[T] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn column_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column_vector(&self, j: usize) -> DenseVector<T> {
        DenseVector::from_vec_unchecked(self.column(j).to_vec())
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Rows at `indices`, in that order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), self.cols, |i, j| self[(indices[i], j)])
    }

    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for &j in indices {
            data.extend_from_slice(self.column(j));
        }
        Self {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::dims("hcat", self.rows, other.rows));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn matvec(&self, x: &DenseVector<T>) -> Result<DenseVector<T>> {
        if x.len() != self.cols {
            return Err(Error::dims(
                "matvec",
                format!("vector of length {}", self.cols),
                x.len(),
            ));
        }
        Ok(DenseVector::from_vec_unchecked(
            self.matvec_slice(x.as_slice()),
        ))
    }

    /// `A x` on raw slices; `x.len()` must equal `cols`.
    pub fn matvec_slice(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.cols);
        let mut out = vec![T::zero(); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == T::zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.column(j)) {
                *o += a * xj;
            }
        }
        out
    }

    /// `A^T y`.
    pub fn matvec_transposed(&self, y: &DenseVector<T>) -> Result<DenseVector<T>> {
        if y.len() != self.rows {
            return Err(Error::dims(
                "matvec_transposed",
                format!("vector of length {}", self.rows),
                y.len(),
            ));
        }
        Ok(DenseVector::from_fn(self.cols, |j| {
            dot(self.column(j), y.as_slice())
        }))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dims(
                "matmul",
                format!("{} inner rows", self.cols),
                other.rows,
            ));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for j in 0..other.cols {
            data.extend(self.matvec_slice(other.column(j)));
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dims(
                "sub",
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |m, &x| if x.abs() > m { x.abs() } else { m })
    }

    pub fn cast<U: Scalar>(&self) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| U::lit(x.as_f64())).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

#[inline]
pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Free-function form of [`DenseMatrix::matvec`].
pub fn matvec<T: Scalar>(a: &DenseMatrix<T>, x: &DenseVector<T>) -> Result<DenseVector<T>> {
    a.matvec(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matvec() {
        let a = DenseMatrix::<f64>::identity(3);
        let x = DenseVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(matvec(&a, &x).unwrap().as_slice(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn hand_product() {
        let a = DenseMatrix::<f64>::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0]]);
        let x = DenseVector::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(a.matvec(&x).unwrap().as_slice(), &[1.0, 2.0]);
    }

    #[test]
    fn matvec_matches_double_loop() {
        // Naive row-by-row summation as the reference.
        let a = DenseMatrix::from_fn(5, 3, |i, j| ((i * 7 + j * 3) as f64).sin() * 2.5);
        let x = DenseVector::from_fn(3, |j| (j as f64 + 0.3).cos());
        let got = a.matvec(&x).unwrap();
        for i in 0..5 {
            let mut acc = 0.0;
            for j in 0..3 {
                acc += a[(i, j)] * x[j];
            }
            assert!((got[i] - acc).abs() <= 1e-12 * acc.abs().max(1.0));
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = DenseMatrix::<f64>::zeros(2, 3);
        let x = DenseVector::zeros(2);
        assert!(matches!(
            a.matvec(&x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn column_major_layout() {
        let a = DenseMatrix::<f64>::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(a.as_slice(), &[1.0, 3.0, 2.0, 4.0]);
        assert_eq!(a.column(1), &[2.0, 4.0]);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(DenseVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(DenseMatrix::from_column_major(1, 1, vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn argmax_prefers_lowest_index() {
        let v = DenseVector::new(vec![0.5, -2.0, 2.0, 1.0]).unwrap();
        assert_eq!(v.argmax_abs(), 1);
    }

    #[test]
    fn works_in_single_precision() {
        let a = DenseMatrix::<f32>::identity(2).scaled(2.0);
        let x = DenseVector::new(vec![1.0f32, -1.0]).unwrap();
        assert_eq!(a.matvec(&x).unwrap().as_slice(), &[2.0, -2.0]);
    }
}
