//! Unit-vector systems, the correlation matrix `M`, its inverse `C`, and the
//! auxiliary sequence `{g_n}`.
//!
//! An infinite sequence is represented by a finite prefix of `N` vectors in
//! `C^d`. The recursion
//!
//! ```text
//! g_0 = e_0,   g_n = e_n - sum_{i<n} <e_n, e_i> g_i
//! ```
//!
//! is equivalent to `g_n = e_n + sum_{i<n} c_ni e_i` with `C = M^{-1}` and
//! `m_ij = <e_i, e_j>` for `i > j`. The single-pass Kaczmarz iterate is then
//! `x_n = sum_{i<=n} <x, g_i> e_i`.

use crate::eigen::operator_norm;
use crate::error::{shape_mismatch, Error, Result};
use crate::linalg::{invert_unit_lower_triangular, DenseMatrix, UnitLowerTriangular, Vector, ONE, ZERO};

/// Allowed deviation of `||e_n||` from 1.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Ordered, nonempty list of unit vectors in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVectorSystem {
    dim: usize,
    vectors: Vec<Vector>,
}

impl UnitVectorSystem {
    /// Rejects (rather than renormalizes) vectors whose norm is off by more
    /// than [`UNIT_NORM_TOL`].
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let dim = match vectors.first() {
            Some(v) if !v.is_empty() => v.len(),
            Some(_) => return Err(Error::InvalidShape("vectors of dimension 0".into())),
            None => return Err(Error::InvalidShape("empty system".into())),
        };
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(shape_mismatch("vector dimension", dim, v.len()));
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::NotUnitNorm { index, norm });
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Takes the rows of `m` as the vectors `e_n`.
    pub fn from_rows(m: &DenseMatrix) -> Result<Self> {
        Self::new((0..m.rows()).map(|i| m.row_vector(i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn vector(&self, n: usize) -> Result<&Vector> {
        self.vectors.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            len: self.len(),
        })
    }

    /// `N x d` matrix with `e_n` as row `n`.
    pub fn to_rows(&self) -> DenseMatrix {
        DenseMatrix::from_rows(&self.vectors).expect("validated system")
    }
}

/// The constructed `g_n` vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliarySequence {
    vectors: Vec<Vector>,
}

impl AuxiliarySequence {
    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Vector> {
        self.vectors.get(n)
    }

    /// `N x d` matrix with `g_n` as row `n`.
    pub fn to_rows(&self) -> DenseMatrix {
        DenseMatrix::from_rows(&self.vectors).expect("nonempty sequence")
    }
}

/// `M` with strictly lower entries `m_ij = <e_i, e_j>`.
pub fn correlation_matrix(system: &UnitVectorSystem) -> UnitLowerTriangular {
    let e = system.vectors();
    UnitLowerTriangular::from_strict_fn(system.len(), |i, j| e[i].inner(&e[j])).expect("finite inner products")
}

/// Gram matrix with entries `[i, j] = <v_i, v_j>`.
///
/// This is the entrywise conjugate (equivalently, the transpose) of the Gram
/// operator `L L*`, and it is the orientation for which `M + M* - I` equals the
/// Gram matrix of a unit-vector system.
pub fn gram_matrix(vectors: &[Vector]) -> DenseMatrix {
    let n = vectors.len();
    let mut g = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let ip = vectors[i].inner(&vectors[j]);
            g[(i, j)] = ip;
            g[(j, i)] = ip.conj();
        }
    }
    g
}

/// Builds `{g_n}` from the recursion `g_n = e_n - sum_{i<n} <e_n, e_i> g_i`.
pub fn auxiliary_sequence(system: &UnitVectorSystem) -> AuxiliarySequence {
    let e = system.vectors();
    let mut g: Vec<Vector> = Vec::with_capacity(e.len());
    for (n, e_n) in e.iter().enumerate() {
        let mut g_n = e_n.clone();
        for (e_i, g_i) in e[..n].iter().zip(&g) {
            let coeff = e_n.inner(e_i);
            if coeff != ZERO {
                g_n.axpy(-coeff, g_i);
            }
        }
        g.push(g_n);
    }
    AuxiliarySequence { vectors: g }
}

/// Builds `{g_n}` as `g_n = e_n + sum_{i<n} c_ni e_i` from a given `C = M^{-1}`.
pub fn auxiliary_sequence_from_inverse(
    system: &UnitVectorSystem,
    c: &UnitLowerTriangular,
) -> Result<AuxiliarySequence> {
    if c.n() != system.len() {
        return Err(shape_mismatch("triangular size", system.len(), c.n()));
    }
    let e = system.vectors();
    let vectors = (0..e.len())
        .map(|n| {
            let mut g_n = e[n].clone();
            for (i, &c_ni) in c.strict_row(n).iter().enumerate() {
                if c_ni != ZERO {
                    g_n.axpy(c_ni, &e[i]);
                }
            }
            g_n
        })
        .collect();
    Ok(AuxiliarySequence { vectors })
}

/// `sum_{i<=n} <e_n, e_i> g_i`, which reproduces `e_n`.
pub fn reconstruct_from_g(system: &UnitVectorSystem, g: &AuxiliarySequence, n: usize) -> Result<Vector> {
    if g.len() != system.len() {
        return Err(shape_mismatch("auxiliary sequence length", system.len(), g.len()));
    }
    let e_n = system.vector(n)?;
    let e = system.vectors();
    let mut out = Vector::zeros(system.dim());
    for (i, (e_i, g_i)) in e.iter().zip(g.vectors()).take(n + 1).enumerate() {
        let coeff = if i == n { ONE } else { e_n.inner(e_i) };
        out.axpy(coeff, g_i);
    }
    Ok(out)
}

/// `M`, its inverse `C`, and `U = C - I`.
#[derive(Debug, Clone)]
pub struct TriangularPair {
    pub m: UnitLowerTriangular,
    pub c: UnitLowerTriangular,
    pub u: DenseMatrix,
}

impl TriangularPair {
    pub fn new(system: &UnitVectorSystem) -> Self {
        let m = correlation_matrix(system);
        let c = invert_unit_lower_triangular(&m);
        let u = c.strictly_lower_dense();
        Self { m, c, u }
    }

    /// `||M C - I||_max`
    pub fn inverse_residual(&self) -> f64 {
        let prod = self.m.to_dense().matmul(&self.c.to_dense()).expect("square");
        prod.max_abs_diff(&DenseMatrix::identity(self.m.n())).expect("square")
    }

    /// `||C - I||`, bounded by 1 for every unit-vector system.
    pub fn u_norm(&self, tol: f64) -> Result<f64> {
        operator_norm(&self.u, tol)
    }

    /// `U* U`
    pub fn u_star_u(&self) -> DenseMatrix {
        self.u.adjoint().matmul(&self.u).expect("square")
    }

    /// `||C* Gram C - (I - U* U)||_max` with `Gram = gram_matrix(e)`.
    pub fn grammian_residual(&self, system: &UnitVectorSystem) -> Result<f64> {
        let n = system.len();
        if self.c.n() != n {
            return Err(shape_mismatch("triangular size", n, self.c.n()));
        }
        let c = self.c.to_dense();
        let lhs = c.adjoint().matmul(&gram_matrix(system.vectors()))?.matmul(&c)?;
        let rhs = DenseMatrix::identity(n).sub(&self.u_star_u())?;
        lhs.max_abs_diff(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn real(v: &[f64]) -> Vector {
        Vector::from_real(v).unwrap()
    }

    fn remark(d: usize) -> UnitVectorSystem {
        let mut vs: Vec<Vector> = (0..d).map(|k| Vector::basis(d, k).unwrap()).collect();
        let mut e1 = vec![0.0; d];
        e1[0] = 0.5;
        e1[1] = 3f64.sqrt() / 2.0;
        vs[1] = real(&e1);
        UnitVectorSystem::new(vs).unwrap()
    }

    #[test]
    fn rejects_non_unit_and_empty() {
        assert!(matches!(
            UnitVectorSystem::new(vec![real(&[1.0, 1.0])]),
            Err(Error::NotUnitNorm { index: 0, .. })
        ));
        assert!(UnitVectorSystem::new(vec![]).is_err());
        assert!(UnitVectorSystem::new(vec![real(&[1.0]), real(&[1.0, 0.0])]).is_err());
    }

    #[test]
    fn orthonormal_correlation_is_identity() {
        let e = UnitVectorSystem::new((0..3).map(|k| Vector::basis(3, k).unwrap()).collect()).unwrap();
        assert_eq!(correlation_matrix(&e), UnitLowerTriangular::identity(3));
        let g = auxiliary_sequence(&e);
        assert_eq!(g.vectors(), e.vectors());
    }

    #[test]
    fn repeated_vector_gives_zero_g() {
        let e0 = real(&[1.0, 0.0]);
        let e = UnitVectorSystem::new(vec![e0.clone(), e0.clone(), real(&[0.0, 1.0])]).unwrap();
        assert_eq!(correlation_matrix(&e).get(1, 0), ONE);
        let g = auxiliary_sequence(&e);
        assert_eq!(g.vectors()[1], Vector::zeros(2));
    }

    #[test]
    fn remark_matrices() {
        let e = remark(4);
        let pair = TriangularPair::new(&e);
        assert!((pair.m.get(1, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(pair.m.strict_entries().filter(|x| x.2.norm() > 1e-15).count(), 1);
        assert!((pair.c.get(1, 0) + Complex64::new(0.5, 0.0)).norm() < 1e-14);
        let g = auxiliary_sequence(&e);
        let back = reconstruct_from_g(&e, &g, 1).unwrap();
        assert!(back.max_abs_diff(&e.vectors()[1]) < 1e-15);
        assert!((pair.u_norm(1e-10).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn reconstruct_index_out_of_range() {
        let e = remark(3);
        let g = auxiliary_sequence(&e);
        assert_eq!(
            reconstruct_from_g(&e, &g, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn two_g_constructions_agree_on_complex_system() {
        let raw = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.3, 0.4), Complex64::new(0.0, 0.866_025_403_784_438_6)],
            [Complex64::new(0.0, 0.6), Complex64::new(0.8, 0.0)],
        ];
        let vs = raw
            .iter()
            .map(|r| {
                let v = Vector::new(r.to_vec()).unwrap();
                let n = v.norm();
                v.scaled(Complex64::new(1.0 / n, 0.0))
            })
            .collect();
        let e = UnitVectorSystem::new(vs).unwrap();
        let pair = TriangularPair::new(&e);
        let g1 = auxiliary_sequence(&e);
        let g2 = auxiliary_sequence_from_inverse(&e, &pair.c).unwrap();
        for (a, b) in g1.vectors().iter().zip(g2.vectors()) {
            assert!(a.max_abs_diff(b) < 1e-14);
        }
        assert!(pair.grammian_residual(&e).unwrap() < 1e-14);
    }
}
