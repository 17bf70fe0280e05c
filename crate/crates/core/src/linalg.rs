//! Dense complex vectors and matrices.
//!
//! Inner products conjugate the *second* argument: `<x, y> = sum_k x_k * conj(y_k)`.
//! Every other module relies on this convention, in particular the correlation
//! entries `m_ij = <e_i, e_j>`.

use std::ops::{Deref, Index, IndexMut};

use num_complex::Complex64;

use crate::error::{shape_mismatch, Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_finite(entries: &[Complex64]) -> Result<()> {
    match entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// A vector in `C^d` with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<Complex64>);

impl Vector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        check_finite(&entries)?;
        Ok(Self(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_raw(entries: Vec<Complex64>) -> Self {
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![ZERO; len])
    }

    /// Canonical basis vector `delta_k` of length `len`.
    pub fn basis(len: usize, k: usize) -> Result<Self> {
        if k >= len {
            return Err(Error::IndexOutOfRange { index: k, len });
        }
        let mut v = Self::zeros(len);
        v.0[k] = ONE;
        Ok(v)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub(crate) fn iter_mut(&mut self) -> std::slice::IterMut<'_, Complex64> {
        self.0.iter_mut()
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    /// `<self, other>`, conjugate-linear in `other`.
    pub fn inner(&self, other: &Vector) -> Complex64 {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `self += alpha * x`
    pub fn axpy(&mut self, alpha: Complex64, x: &Vector) {
        debug_assert_eq!(self.len(), x.len());
        for (s, xi) in self.0.iter_mut().zip(&x.0) {
            *s += alpha * xi;
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, alpha: Complex64) -> Vector {
        Vector(self.0.iter().map(|z| z * alpha).collect())
    }

    pub fn conj(&self) -> Vector {
        Vector(self.0.iter().map(|z| z.conj()).collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Deref for Vector {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(shape_mismatch("entry count", rows * cols, data.len()));
        }
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(shape_mismatch("row length", cols, bad.len()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(rows.len(), cols, data)
    }

    /// Matrix whose `i`-th row holds the entries of `vectors[i]`.
    pub fn from_rows(vectors: &[Vector]) -> Result<Self> {
        let cols = vectors.first().map_or(0, |v| v.len());
        if let Some(bad) = vectors.iter().find(|v| v.len() != cols) {
            return Err(shape_mismatch("row length", cols, bad.len()));
        }
        let data = vectors.iter().flat_map(|v| v.iter().copied()).collect();
        Self::new(vectors.len(), cols, data)
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

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn adjoint(&self) -> DenseMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(shape_mismatch("inner dimension", self.cols, rhs.rows));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if self.cols != x.len() {
            return Err(shape_mismatch("vector length", self.cols, x.len()));
        }
        Ok(Vector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} minus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scaled(&self, alpha: Complex64) -> DenseMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * alpha).collect(),
        }
    }

    /// `(A + A*) / 2`
    pub fn hermitian_part(&self) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "Hermitian part of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        }))
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> Result<f64> {
        Ok(self.sub(rhs)?.max_abs())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest 2-norm over the columns.
    pub fn max_column_norm(&self) -> f64 {
        (0..self.cols).map(|j| self.column(j).norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Unit lower triangular matrix: implicit ones on the diagonal, zeros above.
///
/// Only the strictly lower part is stored, packed row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitLowerTriangular {
    n: usize,
    strict: Vec<Complex64>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    i * (i - 1) / 2 + j
}

impl UnitLowerTriangular {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            strict: vec![ZERO; n * n.saturating_sub(1) / 2],
        }
    }

    /// Build from a function of the strictly lower indices `(i, j)`, `i > j`.
    pub fn from_strict_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut strict = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..n {
            for j in 0..i {
                strict.push(f(i, j));
            }
        }
        check_finite(&strict)?;
        Ok(Self { n, strict })
    }

    /// Reads the strictly lower part of a square matrix; diagonal and upper part are ignored.
    pub fn from_dense_lower(m: &DenseMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "triangular from {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Self::from_strict_fn(m.rows(), |i, j| m[(i, j)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.n && j < self.n, "index ({i},{j}) out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.strict[packed(i, j)],
            std::cmp::Ordering::Equal => ONE,
            std::cmp::Ordering::Less => ZERO,
        }
    }

    /// Writes a strictly lower entry. Panics when `i <= j`.
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i > j && i < self.n, "({i},{j}) is not strictly lower");
        self.strict[packed(i, j)] = value;
    }

    /// The strictly lower part of row `i`, columns `0..i`.
    pub fn strict_row(&self, i: usize) -> &[Complex64] {
        let start = packed(i.max(1), 0);
        if i == 0 {
            &self.strict[0..0]
        } else {
            &self.strict[start..start + i]
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Dense copy of the strictly lower part, i.e. `self - I`.
    pub fn strictly_lower_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| if i > j { self.get(i, j) } else { ZERO })
    }

    /// Iterates `(i, j, value)` over the strictly lower entries.
    pub fn strict_entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (1..self.n).flat_map(move |i| (0..i).map(move |j| (i, j, self.strict[packed(i, j)])))
    }
}

/// Inverse of a unit lower triangular matrix by forward substitution.
///
/// Row `i` of the inverse satisfies `c_ij = -(m_ij + sum_{j<k<i} m_ik c_kj)` for `j < i`.
pub fn invert_unit_lower_triangular(m: &UnitLowerTriangular) -> UnitLowerTriangular {
    let n = m.n();
    let mut c = UnitLowerTriangular::identity(n);
    for i in 1..n {
        let m_row = m.strict_row(i);
        let mut row = vec![ZERO; i];
        for j in (0..i).rev() {
            let mut acc = m_row[j];
            for (k, &m_ik) in m_row.iter().enumerate().skip(j + 1) {
                if m_ik != ZERO {
                    acc += m_ik * c.get(k, j);
                }
            }
            row[j] = -acc;
        }
        let start = packed(i, 0);
        c.strict[start..start + i].copy_from_slice(&row);
    }
    c
}
