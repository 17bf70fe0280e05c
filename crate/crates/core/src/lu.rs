use num_complex::Complex64;

use crate::error::{shape_mismatch, Error, Result};
use crate::linalg::{DenseMatrix, Vector, ZERO};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuDecomposition {
    lu: DenseMatrix,
    pivots: Vec<usize>,
}

impl LuDecomposition {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "LU requires a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut pivots: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best == 0.0 {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                pivots.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(Self { lu, pivots })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve(&self, rhs: &Vector) -> Result<Vector> {
        let n = self.dim();
        if rhs.len() != n {
            return Err(shape_mismatch("right-hand side length", n, rhs.len()));
        }
        let mut y: Vec<Complex64> = self.pivots.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                y[i] = y[i] - l * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                y[i] = y[i] - u * y[k];
            }
            y[i] /= self.lu[(i, i)];
        }
        Vector::new(y)
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        let n = self.dim();
        let mut inv = DenseMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.solve(&Vector::basis(n, j)?)?;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }
}

/// Solves `A x = b` for square `A`.
pub fn lu_solve(a: &DenseMatrix, b: &Vector) -> Result<Vector> {
    LuDecomposition::new(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_permuted_system() {
        let a = DenseMatrix::from_real_rows(&[&[0.0, 2.0], &[3.0, 1.0]]).unwrap();
        let x = lu_solve(&a, &Vector::from_real(&[4.0, 5.0]).unwrap()).unwrap();
        assert!(x.max_abs_diff(&Vector::from_real(&[1.0, 2.0]).unwrap()) < 1e-15);
    }

    #[test]
    fn singular_is_reported() {
        let a = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(LuDecomposition::new(&a), Err(Error::Singular { .. })));
    }

    #[test]
    fn inverse_times_matrix() {
        let a = DenseMatrix::from_fn(4, 4, |i, j| {
            Complex64::new(
                if i == j { 4.0 } else { 1.0 / (1.0 + (i + j) as f64) },
                (i as f64) * 0.1 - j as f64 * 0.2,
            )
        });
        let inv = LuDecomposition::new(&a).unwrap().inverse().unwrap();
        let prod = a.matmul(&inv).unwrap();
        assert!(prod.max_abs_diff(&DenseMatrix::identity(4)).unwrap() < 1e-14);
    }
}
