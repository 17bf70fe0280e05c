//! Kaczmarz iteration engines.
//!
//! Three distinct engines are provided:
//!
//! * [`cyclic_solve`]: the classical method for `A x = b`, sweeping the rows
//!   cyclically from an arbitrary starting point.
//! * [`single_pass`]: one pass over a unit-vector system in *analysis mode*,
//!   where the target `x` is known and `x_n = x_{n-1} + <x - x_{n-1}, e_n> e_n`
//!   starting from `x_0 = <x, e_0> e_0`.
//! * [`data_driven_pass`]: the same recursion driven by `(A, b)` alone with
//!   `e_n = a_n* / ||a_n||` and `x_0 = b_0 a_0* / ||a_0||^2`. Passes after the
//!   first repeat the rows cyclically.
//!
//! A row `a` acts on `x` as `a . x = sum_k a_k x_k`; the projection onto the
//! hyperplane `a . x = b_i` moves along `conj(a)`.

use num_complex::Complex64;

use crate::error::{shape_mismatch, Error, Result};
use crate::linalg::{DenseMatrix, Vector};
use crate::systems::{AuxiliarySequence, UnitVectorSystem};

/// Rows with norm at or below this are treated as zero.
pub const ZERO_ROW_TOL: f64 = 1e-12;

/// `A x = b` with no zero rows.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    a: DenseMatrix,
    b: Vector,
}

impl LinearSystem {
    pub fn new(a: DenseMatrix, b: Vector) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(shape_mismatch("right-hand side length", a.rows(), b.len()));
        }
        check_rows(&a)?;
        Ok(Self { a, b })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &Vector {
        &self.b
    }

    pub fn residual_norm(&self, x: &Vector) -> Result<f64> {
        Ok(self.a.mul_vec(x)?.sub(&self.b).norm())
    }
}

pub(crate) fn check_rows(a: &DenseMatrix) -> Result<Vec<f64>> {
    (0..a.rows())
        .map(|i| {
            let norm = row_norm_sqr(a.row(i)).sqrt();
            if norm > ZERO_ROW_TOL {
                Ok(norm)
            } else {
                Err(Error::ZeroRow { index: i })
            }
        })
        .collect()
}

fn row_norm_sqr(row: &[Complex64]) -> f64 {
    row.iter().map(|z| z.norm_sqr()).sum()
}

fn row_dot(row: &[Complex64], x: &Vector) -> Complex64 {
    row.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
}

/// Unit vectors `e_n = a_n* / ||a_n||` with the matching scaled right-hand side.
#[derive(Debug, Clone)]
pub struct NormalizedRows {
    pub system: UnitVectorSystem,
    /// `||a_n||`
    pub scales: Vec<f64>,
    /// `b_n / ||a_n||`
    pub rhs: Vector,
}

pub fn normalize_rows(s: &LinearSystem) -> Result<NormalizedRows> {
    let a = s.matrix();
    let scales = check_rows(a)?;
    let vectors = scales
        .iter()
        .enumerate()
        .map(|(i, &norm)| Vector::from_raw(a.row(i).iter().map(|z| z.conj() / norm).collect()))
        .collect();
    let rhs = Vector::from_raw(s.rhs().iter().zip(&scales).map(|(b, &norm)| b / norm).collect());
    Ok(NormalizedRows {
        system: UnitVectorSystem::new(vectors)?,
        scales,
        rhs,
    })
}

/// Iterates and per-step diagnostics of a Kaczmarz run.
#[derive(Debug, Clone, Default)]
pub struct KaczmarzTrajectory {
    /// Starting point followed by one iterate per row application.
    pub iterates: Vec<Vector>,
    /// `||x - x_n||` for each iterate, when the target is known.
    pub error_norms: Vec<f64>,
    /// `||A x - b||` at the start and after each sweep/pass, when the system is known.
    pub residual_norms: Vec<f64>,
    /// Sweeps (or passes) performed.
    pub sweeps: usize,
    /// Whether the residual tolerance was met.
    pub converged: bool,
}

impl KaczmarzTrajectory {
    pub fn last(&self) -> &Vector {
        self.iterates.last().expect("trajectory has at least one iterate")
    }

    /// `||x - x_n||` for every recorded iterate.
    pub fn errors_against(&self, x: &Vector) -> Vec<f64> {
        self.iterates.iter().map(|it| x.sub(it).norm()).collect()
    }
}

/// Classical cyclic Kaczmarz: `x <- x + (b_i - a_i . x) / ||a_i||^2 conj(a_i)`, rows in order,
/// stopping once `||A x - b|| <= tol ||b||` (checked after each sweep) or after `max_sweeps`.
pub fn cyclic_solve(s: &LinearSystem, x0: &Vector, max_sweeps: usize, tol: f64) -> Result<KaczmarzTrajectory> {
    let a = s.matrix();
    if x0.len() != a.cols() {
        return Err(shape_mismatch("starting point length", a.cols(), x0.len()));
    }
    if max_sweeps == 0 {
        return Err(Error::InvalidShape("max_sweeps must be at least 1".into()));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let norms_sqr: Vec<f64> = (0..a.rows()).map(|i| row_norm_sqr(a.row(i))).collect();
    let b_norm = s.rhs().norm();
    let threshold = if b_norm > 0.0 { tol * b_norm } else { tol };

    let mut x = x0.clone();
    let mut traj = KaczmarzTrajectory {
        iterates: vec![x.clone()],
        residual_norms: vec![s.residual_norm(&x)?],
        ..Default::default()
    };
    for _ in 0..max_sweeps {
        for (i, &nsq) in norms_sqr.iter().enumerate() {
            let row = a.row(i);
            let step = (s.rhs()[i] - row_dot(row, &x)) / nsq;
            for (xk, ak) in x.iter_mut().zip(row) {
                *xk += step * ak.conj();
            }
            traj.iterates.push(x.clone());
        }
        traj.sweeps += 1;
        let residual = s.residual_norm(&x)?;
        traj.residual_norms.push(residual);
        if residual <= threshold {
            traj.converged = true;
            break;
        }
    }
    Ok(traj)
}

/// One pass of `x_n = x_{n-1} + <x - x_{n-1}, e_n> e_n` from `x_0 = <x, e_0> e_0`,
/// recording every iterate and `||x - x_n||`.
pub fn single_pass(e: &UnitVectorSystem, x: &Vector) -> Result<KaczmarzTrajectory> {
    if x.len() != e.dim() {
        return Err(shape_mismatch("target length", e.dim(), x.len()));
    }
    let vs = e.vectors();
    let mut iterates = Vec::with_capacity(vs.len());
    let mut error_norms = Vec::with_capacity(vs.len());
    let mut current = Vector::zeros(e.dim());
    // x_0 is the n = 0 case of the recursion started from the zero vector.
    for e_n in vs {
        let diff = x.sub(&current);
        let coeff = diff.inner(e_n);
        current.axpy(coeff, e_n);
        error_norms.push(x.sub(&current).norm());
        iterates.push(current.clone());
    }
    Ok(KaczmarzTrajectory {
        iterates,
        error_norms,
        residual_norms: Vec::new(),
        sweeps: 1,
        converged: false,
    })
}

/// `x_n = sum_{i<=n} <x, g_i> e_i`.
pub fn partial_sum_via_g(e: &UnitVectorSystem, g: &AuxiliarySequence, x: &Vector, n: usize) -> Result<Vector> {
    if n >= e.len() {
        return Err(Error::IndexOutOfRange { index: n, len: e.len() });
    }
    if g.len() != e.len() {
        return Err(shape_mismatch("auxiliary sequence length", e.len(), g.len()));
    }
    if x.len() != e.dim() {
        return Err(shape_mismatch("target length", e.dim(), x.len()));
    }
    let mut out = Vector::zeros(e.dim());
    for (e_i, g_i) in e.vectors()[..=n].iter().zip(g.vectors()) {
        out.axpy(x.inner(g_i), e_i);
    }
    Ok(out)
}

/// Data-mode recursion from `(A, b)` only:
/// `x_0 = b_0 a_0* / ||a_0||^2`, `x_{n+1} = x_n + (b_{n+1} - a_{n+1} . x_n) / ||a_{n+1}||^2 a_{n+1}*`.
/// Rows repeat cyclically for `passes > 1`. Residuals are recorded after every pass.
pub fn data_driven_pass(s: &LinearSystem, passes: usize) -> Result<KaczmarzTrajectory> {
    if passes == 0 {
        return Err(Error::InvalidShape("passes must be at least 1".into()));
    }
    let a = s.matrix();
    let norms_sqr: Vec<f64> = check_rows(a)?.iter().map(|n| n * n).collect();
    let mut x = Vector::zeros(a.cols());
    let mut traj = KaczmarzTrajectory::default();
    for _ in 0..passes {
        for (i, &nsq) in norms_sqr.iter().enumerate() {
            let row = a.row(i);
            // x starts at zero, so the first step is exactly x_0 = b_0 a_0* / ||a_0||^2.
            let step = (s.rhs()[i] - row_dot(row, &x)) / nsq;
            for (xk, ak) in x.iter_mut().zip(row) {
                *xk += step * ak.conj();
            }
            traj.iterates.push(x.clone());
        }
        traj.sweeps += 1;
        traj.residual_norms.push(s.residual_norm(&x)?);
    }
    traj.converged = traj
        .residual_norms
        .last()
        .is_some_and(|&r| r <= ZERO_ROW_TOL * s.rhs().norm().max(1.0));
    Ok(traj)
}
