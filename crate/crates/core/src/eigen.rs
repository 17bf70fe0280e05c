//! Hermitian eigenvalues via Householder tridiagonalization and implicit QL.
//!
//! The complex Hermitian input is reduced to a tridiagonal matrix with a
//! unitary similarity, the complex sub-diagonal is made real with a diagonal
//! phase scaling, and the resulting real symmetric tridiagonal matrix is
//! diagonalized with Wilkinson-shifted QL sweeps. Cost is `O(n^3)` for the
//! reduction and `O(n^2)` for the eigenvalues alone.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, ONE, ZERO};

/// Entrywise tolerance on `|H - H*|`, relative to `max(1, max|H_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_QL_ITERATIONS: usize = 60;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, one per column, matching `values`.
    pub vectors: DenseMatrix,
}

pub fn check_hermitian(h: &DenseMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "Hermitian matrix must be square, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let limit = HERMITIAN_TOL * h.max_abs().max(1.0);
    let n = h.rows();
    for i in 0..n {
        for j in 0..=i {
            let deviation = (h[(i, j)] - h[(j, i)].conj()).norm();
            if deviation > limit {
                return Err(Error::NonHermitian {
                    row: i,
                    col: j,
                    deviation,
                });
            }
        }
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

struct Tridiagonal {
    diag: Vec<f64>,
    sub: Vec<f64>,
    /// Unitary `Z` with `H = Z T Z*`, present only when requested.
    basis: Option<Vec<Complex64>>,
}

fn tridiagonalize(h: &DenseMatrix, want_basis: bool) -> Tridiagonal {
    let n = h.rows();
    // Work on the Hermitian matrix rebuilt from the lower triangle.
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            match i.cmp(&j) {
                std::cmp::Ordering::Greater => h[(i, j)],
                std::cmp::Ordering::Equal => Complex64::new(h[(i, i)].re, 0.0),
                std::cmp::Ordering::Less => h[(j, i)].conj(),
            }
        })
        .collect();
    let mut q: Option<Vec<Complex64>> = want_basis.then(|| {
        let mut q = vec![ZERO; n * n];
        for i in 0..n {
            q[i * n + i] = ONE;
        }
        q
    });

    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x0 = a[(k + 1) * n + k];
        let tail: f64 = (k + 2..n).map(|i| a[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        for (t, vi) in v[..m].iter_mut().enumerate() {
            *vi = a[(k + 1 + t) * n + k];
        }
        v[0] += phase * alpha;
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;

        // p = tau * B v on the trailing block B = a[k+1.., k+1..]
        for (r, pr) in p[..m].iter_mut().enumerate() {
            let row = &a[(k + 1 + r) * n + k + 1..(k + 1 + r) * n + n];
            *pr = row.iter().zip(&v[..m]).map(|(b, vi)| b * vi).sum::<Complex64>() * tau;
        }
        let vp: Complex64 = v[..m].iter().zip(&p[..m]).map(|(vi, pi)| vi.conj() * pi).sum();
        let kappa = 0.5 * tau * vp.re;
        for t in 0..m {
            p[t] -= v[t] * kappa;
        }
        // B <- B - v q* - q v*
        for r in 0..m {
            let (vr, qr) = (v[r], p[r]);
            let row = &mut a[(k + 1 + r) * n + k + 1..(k + 1 + r) * n + n];
            for (c, b) in row.iter_mut().enumerate() {
                *b -= vr * p[c].conj() + qr * v[c].conj();
            }
        }
        let beta = -phase * alpha;
        a[(k + 1) * n + k] = beta;
        a[k * n + k + 1] = beta.conj();
        for i in k + 2..n {
            a[i * n + k] = ZERO;
            a[k * n + i] = ZERO;
        }

        if let Some(q) = q.as_mut() {
            // Q <- Q (I - tau v v*) on columns k+1..n
            for r in 0..n {
                let row = &mut q[r * n + k + 1..r * n + n];
                let qv: Complex64 = row.iter().zip(&v[..m]).map(|(qe, vi)| qe * vi).sum::<Complex64>() * tau;
                for (qe, vi) in row.iter_mut().zip(&v[..m]) {
                    *qe -= qv * vi.conj();
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut sub = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for i in 0..n.saturating_sub(1) {
        let s = a[(i + 1) * n + i];
        let mag = s.norm();
        sub[i] = mag;
        phases[i + 1] = if mag > 0.0 { phases[i] * (s / mag) } else { phases[i] };
    }
    let basis = q.map(|mut q| {
        for r in 0..n {
            for (c, ph) in phases.iter().enumerate() {
                q[r * n + c] *= ph;
            }
        }
        q
    });
    Tridiagonal { diag, sub, basis }
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
/// `sub[i]` couples `i` and `i + 1`; `sub[n-1]` is ignored. When `z` is given,
/// the plane rotations are accumulated into its columns (row-major `n x n`).
fn tridiagonal_ql(diag: &mut [f64], sub: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    sub[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if sub[m].abs() + dd == dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { iterations });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + sub[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * sub[i];
                let b = c * sub[i];
                r = f.hypot(g);
                sub[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    sub[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zi = z[k * n + i];
                        let zi1 = z[k * n + i + 1];
                        z[k * n + i + 1] = s * zi + c * zi1;
                        z[k * n + i] = c * zi - s * zi1;
                    }
                }
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            sub[l] = g;
            sub[m] = 0.0;
        }
    }
    Ok(())
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &DenseMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let Tridiagonal { mut diag, mut sub, .. } = tridiagonalize(h, false);
    tridiagonal_ql(&mut diag, &mut sub, None)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

/// Full eigen-decomposition of a Hermitian matrix.
pub fn hermitian_eigen(h: &DenseMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.rows();
    let Tridiagonal {
        mut diag,
        mut sub,
        basis,
    } = tridiagonalize(h, true);
    let basis = basis.expect("basis requested");
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        w[i * n + i] = 1.0;
    }
    tridiagonal_ql(&mut diag, &mut sub, Some(&mut w))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]));
    let values = order.iter().map(|&j| diag[j]).collect();
    // vectors = basis * w, columns permuted by `order`
    let vectors = DenseMatrix::from_fn(n, n, |r, c| {
        let col = order[c];
        (0..n).map(|k| basis[r * n + k] * w[k * n + col]).sum()
    });
    Ok(HermitianEigen { values, vectors })
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
///
/// The QL sweeps deflate at machine precision, so the returned values are
/// accurate to a small multiple of `eps * ||H||`; any `tol` above that floor
/// is met. `tol` must be positive and finite.
pub fn hermitian_extreme_eigs(h: &DenseMatrix, tol: f64) -> Result<(f64, f64)> {
    check_tol(tol)?;
    let values = hermitian_eigenvalues(h)?;
    Ok((values[0], values[values.len() - 1]))
}

/// Largest singular value, `sqrt(lambda_max(T* T))`.
///
/// Uses whichever of `T* T` and `T T*` is smaller; both share the nonzero spectrum.
pub fn operator_norm(t: &DenseMatrix, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let gram = if t.rows() < t.cols() {
        t.matmul(&t.adjoint())?
    } else {
        t.adjoint().matmul(t)?
    };
    let (_, max) = hermitian_extreme_eigs(&gram, tol)?;
    Ok(max.max(0.0).sqrt())
}
