//! Frame-theoretic classification of unit-vector systems.
//!
//! All quantities are computed on the finite system `e_0, ..., e_{N-1}` in
//! `C^d`. For a spanning system the two effectiveness characterizations
//! coincide exactly at this scale: `{g_n}` is a tight frame with bound 1 iff
//! `U = C - I` is a partial isometry, because `C (M + M* - I) C* = I - U U*`.

use serde::Serialize;

use crate::eigen::{hermitian_eigen, hermitian_eigenvalues, hermitian_extreme_eigs, operator_norm};
use crate::error::{shape_mismatch, Error, Result};
use crate::kaczmarz::{check_rows, data_driven_pass, LinearSystem};
use crate::linalg::{DenseMatrix, Vector, ONE};
use crate::lu::LuDecomposition;
use crate::systems::{auxiliary_sequence, gram_matrix, AuxiliarySequence, TriangularPair, UnitVectorSystem};

/// Relative accuracy requested from the eigensolver.
pub const EIG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Lower frame bounds at or below this count as zero.
    pub frame_tol: f64,
    /// Allowed `|A - 1|`, `|B - 1|` for a tight frame with bound 1.
    pub tight_tol: f64,
    /// Allowed `max |Gram - I|` for an orthonormal basis; also the orthogonality test for rows.
    pub onb_tol: f64,
    /// Threshold on the tight and partial-isometry defects.
    pub effective_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            frame_tol: 1e-10,
            tight_tol: 1e-6,
            onb_tol: 1e-8,
            effective_tol: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for t in [self.frame_tol, self.tight_tol, self.onb_tol, self.effective_tol] {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub count: usize,
    pub dim: usize,
    /// Optimal lower frame bound `A` (smallest eigenvalue of the frame operator, clamped at 0).
    pub lower_bound: f64,
    /// Optimal upper frame bound `B`.
    pub upper_bound: f64,
    pub is_frame: bool,
    pub is_tight_one: bool,
    /// `count == dim` with an invertible Gram matrix.
    pub is_riesz: bool,
    pub is_onb: bool,
    pub gram_min_eig: f64,
}

/// `S = sum_n v_n v_n*`, the `d x d` frame operator.
pub fn frame_operator(vectors: &[Vector]) -> Result<DenseMatrix> {
    let dim = vectors
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::InvalidShape("empty vector list".into()))?;
    let mut s = DenseMatrix::zeros(dim, dim);
    for v in vectors {
        if v.len() != dim {
            return Err(shape_mismatch("vector dimension", dim, v.len()));
        }
        for i in 0..dim {
            if v[i].norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..dim {
                s[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    Ok(s)
}

pub fn frame_bounds(vectors: &[Vector], tols: &Tolerances) -> Result<FrameReport> {
    let s = frame_operator(vectors)?;
    let (lo, hi) = hermitian_extreme_eigs(&s, EIG_TOL)?;
    let lower_bound = lo.max(0.0);
    let gram = gram_matrix(vectors);
    let gram_min_eig = hermitian_extreme_eigs(&gram, EIG_TOL)?.0;
    let count = vectors.len();
    let dim = s.rows();
    let is_frame = lower_bound > tols.frame_tol;
    let is_riesz = is_frame && count == dim && gram_min_eig > tols.frame_tol;
    let is_onb = is_riesz && gram.max_abs_diff(&DenseMatrix::identity(count))? <= tols.onb_tol;
    Ok(FrameReport {
        count,
        dim,
        lower_bound,
        upper_bound: hi,
        is_frame,
        is_tight_one: (lower_bound - 1.0).abs() <= tols.tight_tol && (hi - 1.0).abs() <= tols.tight_tol,
        is_riesz,
        is_onb,
        gram_min_eig,
    })
}

fn require_spanning(e: &UnitVectorSystem, tols: &Tolerances) -> Result<FrameReport> {
    let report = frame_bounds(e.vectors(), tols)?;
    if report.is_frame {
        Ok(report)
    } else {
        Err(Error::NotSpanning {
            lower_bound: report.lower_bound,
        })
    }
}

/// Effectiveness via tightness of `{g_n}`: returns `(effective, |A_g - 1| + |B_g - 1|)`.
pub fn effectiveness_tight(e: &UnitVectorSystem, tols: &Tolerances) -> Result<(bool, f64)> {
    require_spanning(e, tols)?;
    let g = auxiliary_sequence(e);
    let report = frame_bounds(g.vectors(), tols)?;
    Ok(tight_verdict(&report, tols))
}

fn tight_verdict(g_report: &FrameReport, tols: &Tolerances) -> (bool, f64) {
    let lo = (g_report.lower_bound - 1.0).abs();
    let hi = (g_report.upper_bound - 1.0).abs();
    (lo <= tols.effective_tol && hi <= tols.effective_tol, lo + hi)
}

/// Effectiveness via `U = C - I` being a partial isometry: returns
/// `(effective, ||P^2 - P|| + ||P* - P||)` with `P = U* U`.
pub fn effectiveness_isometry(e: &UnitVectorSystem, tols: &Tolerances) -> Result<(bool, f64)> {
    require_spanning(e, tols)?;
    let defect = isometry_defect(&TriangularPair::new(e))?;
    Ok((defect <= tols.effective_tol, defect))
}

fn isometry_defect(pair: &TriangularPair) -> Result<f64> {
    let p = pair.u_star_u();
    let idempotence = p.matmul(&p)?.sub(&p)?;
    let symmetry = p.adjoint().sub(&p)?;
    Ok(operator_norm(&idempotence, EIG_TOL)? + operator_norm(&symmetry, EIG_TOL)?)
}

/// `1 - A_g` clamped to `[0, 1]`, or `None` when `{g_n}` has no positive lower bound.
pub fn almost_effective_bound(e: &UnitVectorSystem, tols: &Tolerances) -> Result<Option<f64>> {
    require_spanning(e, tols)?;
    let g = auxiliary_sequence(e);
    let report = frame_bounds(g.vectors(), tols)?;
    Ok(almost_from_g(&report, tols))
}

fn almost_from_g(g_report: &FrameReport, tols: &Tolerances) -> Option<f64> {
    (g_report.lower_bound > tols.frame_tol).then(|| (1.0 - g_report.lower_bound).clamp(0.0, 1.0))
}

/// Smallest eigenvalue of the Hermitian part `(C + C*) / 2`.
pub fn hermitian_part_min(pair: &TriangularPair) -> Result<f64> {
    let herm = pair.c.to_dense().hermitian_part()?;
    Ok(hermitian_extreme_eigs(&herm, EIG_TOL)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectivenessReport {
    /// Verdict of the tight-frame test.
    pub effective: bool,
    pub almost_effective_bound: Option<f64>,
    pub tight_defect: f64,
    pub isometry_defect: f64,
    pub c1_lower: Option<f64>,
    /// Whether the tight-frame and partial-isometry tests agree.
    pub methods_agree: bool,
    /// Lower frame bound of `{g_n}`.
    pub g_lower_bound: f64,
    /// One entry per field reported as null.
    pub unavailable: Vec<String>,
}

pub fn effectiveness_report(e: &UnitVectorSystem, tols: &Tolerances) -> Result<EffectivenessReport> {
    require_spanning(e, tols)?;
    let pair = TriangularPair::new(e);
    let g = auxiliary_sequence(e);
    let g_report = frame_bounds(g.vectors(), tols)?;
    build_effectiveness(&pair, &g_report, tols)
}

fn build_effectiveness(
    pair: &TriangularPair,
    g_report: &FrameReport,
    tols: &Tolerances,
) -> Result<EffectivenessReport> {
    let (effective, tight_defect) = tight_verdict(g_report, tols);
    let isometry_defect = isometry_defect(pair)?;
    let almost_effective_bound = almost_from_g(g_report, tols);
    let c1 = hermitian_part_min(pair)?;
    let c1_lower = (c1 > 0.0).then_some(c1);
    let mut unavailable = Vec::new();
    if almost_effective_bound.is_none() {
        unavailable.push(format!(
            "almost_effective_bound: lower frame bound of g is {:e}, not positive",
            g_report.lower_bound
        ));
    }
    if c1_lower.is_none() {
        unavailable.push(format!("c1_lower: Hermitian part of C has minimum eigenvalue {c1:e}"));
    }
    Ok(EffectivenessReport {
        effective,
        almost_effective_bound,
        tight_defect,
        isometry_defect,
        c1_lower,
        methods_agree: effective == (isometry_defect <= tols.effective_tol),
        g_lower_bound: g_report.lower_bound,
        unavailable,
    })
}

/// Residual bound `lim ||A x_n - b||^2 <= bound ||b||^2` for unit rows `e_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceBound {
    /// `max(0, a2 (1 - a1 c1) / a1)`
    pub bound: f64,
    pub a1: f64,
    pub a2: f64,
    pub c1: f64,
    /// Directly computed lower frame bound of `{g_n}`, for comparison with `a1 c1`.
    pub g_lower_bound: f64,
    /// `max(0, a2 (1 - A_g) / a1)`, the same estimate using the computed bound of `{g_n}`.
    pub direct_bound: f64,
}

/// Reads `C >= c1 I` as positivity of the Hermitian part of `C`; fails with
/// [`Error::C1Unavailable`] when that part is not positive definite.
pub fn convergence_bound(e: &UnitVectorSystem, tols: &Tolerances) -> Result<ConvergenceBound> {
    let e_report = frame_bounds(e.vectors(), tols)?;
    if !e_report.is_frame {
        return Err(Error::NotFrame {
            lower_bound: e_report.lower_bound,
        });
    }
    let pair = TriangularPair::new(e);
    let g_report = frame_bounds(auxiliary_sequence(e).vectors(), tols)?;
    bound_from_parts(&e_report, &g_report, &pair)
}

fn bound_from_parts(e_report: &FrameReport, g_report: &FrameReport, pair: &TriangularPair) -> Result<ConvergenceBound> {
    let c1 = hermitian_part_min(pair)?;
    if c1 <= 0.0 {
        return Err(Error::C1Unavailable { c1 });
    }
    let (a1, a2) = (e_report.lower_bound, e_report.upper_bound);
    Ok(ConvergenceBound {
        bound: (a2 * (1.0 - a1 * c1) / a1).max(0.0),
        a1,
        a2,
        c1,
        g_lower_bound: g_report.lower_bound,
        direct_bound: (a2 * (1.0 - g_report.lower_bound) / a1).max(0.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Solvability {
    /// Rows are orthogonal and `A` is invertible; one data-driven pass solves every system.
    AlwaysConverges,
    NotOrthogonalRows,
    NotSurjective,
}

impl Solvability {
    pub fn name(self) -> &'static str {
        match self {
            Solvability::AlwaysConverges => "always_converges",
            Solvability::NotOrthogonalRows => "not_orthogonal_rows",
            Solvability::NotSurjective => "not_surjective",
        }
    }
}

fn min_singular_value(a: &DenseMatrix) -> Result<f64> {
    let ata = a.adjoint().matmul(a)?;
    Ok(hermitian_extreme_eigs(&ata, EIG_TOL)?.0.max(0.0).sqrt())
}

/// Decides whether the data-driven Kaczmarz pass solves `A x = b` for every `b`.
/// Surjectivity is checked first, then orthogonality of the nonzero rows.
pub fn kaczmarz_solvability(a: &DenseMatrix, tols: &Tolerances) -> Result<Solvability> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "solvability needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if min_singular_value(a)? <= tols.frame_tol {
        return Ok(Solvability::NotSurjective);
    }
    let rows: Vec<Vector> = (0..a.rows())
        .map(|i| a.row_vector(i))
        .filter(|r| r.norm() > crate::kaczmarz::ZERO_ROW_TOL)
        .map(|r| {
            let n = r.norm();
            r.scaled(ONE / n)
        })
        .collect();
    let gram = gram_matrix(&rows);
    let off_diagonal = (0..rows.len())
        .flat_map(|i| (0..rows.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| gram[(i, j)].norm())
        .fold(0.0, f64::max);
    Ok(if off_diagonal <= tols.onb_tol {
        Solvability::AlwaysConverges
    } else {
        Solvability::NotOrthogonalRows
    })
}

/// Right-hand side maximizing the error left after one data-driven pass.
#[derive(Debug, Clone)]
pub struct WorstCase {
    /// Unit-norm right-hand side.
    pub rhs: Vector,
    pub solution: Vector,
    /// `||x - x_{N-1}||` predicted for this right-hand side.
    pub limiting_error: f64,
}

/// For square invertible `A`, one pass leaves `x - x_{N-1} = P A^{-1} b` with
/// `P = prod_n (I - e_n e_n*)`; the worst unit `b` is the top right singular
/// vector of `P A^{-1}`.
pub fn worst_case_rhs(a: &DenseMatrix) -> Result<WorstCase> {
    let norms = check_rows(a)?;
    let inverse = LuDecomposition::new(a)?.inverse()?;
    let d = a.cols();
    let mut p = DenseMatrix::identity(d);
    for (i, &norm) in norms.iter().enumerate() {
        let e = a.row_vector(i).conj().scaled(ONE / norm);
        let proj = DenseMatrix::from_fn(d, d, |r, c| {
            let id = if r == c { ONE } else { crate::linalg::ZERO };
            id - e[r] * e[c].conj()
        });
        p = proj.matmul(&p)?;
    }
    let k = p.matmul(&inverse)?;
    let kk = k.adjoint().matmul(&k)?;
    let eig = hermitian_eigen(&kk)?;
    let top = eig.values.len() - 1;
    let rhs = eig.vectors.column(top);
    let solution = inverse.mul_vec(&rhs)?;
    Ok(WorstCase {
        limiting_error: eig.values[top].max(0.0).sqrt(),
        rhs,
        solution,
    })
}

/// Error actually left by one data-driven pass for the given right-hand side.
pub fn single_pass_error(a: &DenseMatrix, b: &Vector) -> Result<f64> {
    let x = LuDecomposition::new(a)?.solve(b)?;
    let traj = data_driven_pass(&LinearSystem::new(a.clone(), b.clone())?, 1)?;
    Ok(x.sub(traj.last()).norm())
}

/// `sum_n <f, g_n> e_n`; equals `f` for every `f` exactly when `{g_n}` is a dual of `{e_n}`.
pub fn dual_synthesis(e: &UnitVectorSystem, g: &AuxiliarySequence, f: &Vector) -> Result<Vector> {
    if g.len() != e.len() {
        return Err(shape_mismatch("auxiliary sequence length", e.len(), g.len()));
    }
    if f.len() != e.dim() {
        return Err(shape_mismatch("probe length", e.dim(), f.len()));
    }
    let mut out = Vector::zeros(e.dim());
    for (e_n, g_n) in e.vectors().iter().zip(g.vectors()) {
        out.axpy(f.inner(g_n), e_n);
    }
    Ok(out)
}

/// Worst-case duality defect `max_{||f|| = 1} ||sum_n <f, g_n> e_n - f||`, i.e. the
/// operator norm of `sum_n e_n g_n* - I`.
pub fn duality_defect(e: &UnitVectorSystem, tols: &Tolerances) -> Result<f64> {
    require_spanning(e, tols)?;
    defect_of(e, &auxiliary_sequence(e))
}

fn defect_of(e: &UnitVectorSystem, g: &AuxiliarySequence) -> Result<f64> {
    let d = e.dim();
    let mut t = DenseMatrix::identity(d).scaled(-ONE);
    for (e_n, g_n) in e.vectors().iter().zip(g.vectors()) {
        for i in 0..d {
            for j in 0..d {
                t[(i, j)] += e_n[i] * g_n[j].conj();
            }
        }
    }
    operator_norm(&t, EIG_TOL)
}

/// A value that may be unavailable, with the reason when it is.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome<T> {
    pub value: Option<T>,
    pub reason: Option<String>,
}

impl<T> Outcome<T> {
    pub fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(value) => Self {
                value: Some(value),
                reason: None,
            },
            Err(err) => Self::missing(err.to_string()),
        }
    }

    pub fn missing(reason: impl Into<String>) -> Self {
        Self {
            value: None,
            reason: Some(reason.into()),
        }
    }
}

/// Everything `analyze` knows about a system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub dim: usize,
    pub count: usize,
    pub frame_e: FrameReport,
    pub frame_g: FrameReport,
    pub effectiveness: Outcome<EffectivenessReport>,
    pub duality_defect: Outcome<f64>,
    pub convergence_bound: Outcome<ConvergenceBound>,
    pub solvability: Outcome<Solvability>,
    /// `||C - I||`
    pub u_norm: f64,
    /// `||M C - I||_max`
    pub inverse_residual: f64,
    /// `||C* Gram C - (I - U* U)||_max`
    pub grammian_residual: f64,
}

/// Full diagnostic pass. `matrix`, when given, is the original row matrix used
/// for the solvability verdict.
pub fn analyze(e: &UnitVectorSystem, matrix: Option<&DenseMatrix>, tols: &Tolerances) -> Result<DiagnosticsReport> {
    tols.validate()?;
    let pair = TriangularPair::new(e);
    let g = auxiliary_sequence(e);
    let frame_e = frame_bounds(e.vectors(), tols)?;
    let frame_g = frame_bounds(g.vectors(), tols)?;
    let spanning = frame_e.is_frame;
    let not_spanning = || {
        Error::NotSpanning {
            lower_bound: frame_e.lower_bound,
        }
        .to_string()
    };

    let effectiveness = if spanning {
        Outcome::from_result(build_effectiveness(&pair, &frame_g, tols))
    } else {
        Outcome::missing(not_spanning())
    };
    let duality_defect = if spanning {
        Outcome::from_result(defect_of(e, &g))
    } else {
        Outcome::missing(not_spanning())
    };
    let convergence_bound = if spanning {
        Outcome::from_result(bound_from_parts(&frame_e, &frame_g, &pair))
    } else {
        Outcome::missing(
            Error::NotFrame {
                lower_bound: frame_e.lower_bound,
            }
            .to_string(),
        )
    };
    let solvability = match matrix {
        Some(a) if a.is_square() => Outcome::from_result(kaczmarz_solvability(a, tols)),
        Some(a) => Outcome::missing(format!("matrix is {}x{}, not square", a.rows(), a.cols())),
        None => Outcome::missing("no row matrix supplied"),
    };
    Ok(DiagnosticsReport {
        dim: e.dim(),
        count: e.len(),
        frame_e,
        frame_g,
        effectiveness,
        duality_defect,
        convergence_bound,
        solvability,
        u_norm: pair.u_norm(EIG_TOL)?,
        inverse_residual: pair.inverse_residual(),
        grammian_residual: pair.grammian_residual(e)?,
    })
}

/// All eigenvalues of `U* U`, ascending; a partial isometry has only zeros and ones.
pub fn isometry_spectrum(e: &UnitVectorSystem) -> Result<Vec<f64>> {
    hermitian_eigenvalues(&TriangularPair::new(e).u_star_u())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_system, SystemKind};
    use num_complex::Complex64;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn remark() -> UnitVectorSystem {
        generate_system(SystemKind::Remark, 4, 4, 0).unwrap()
    }

    #[test]
    fn onb_frame_report() {
        let e = generate_system(SystemKind::Onb, 4, 4, 3).unwrap();
        let r = frame_bounds(e.vectors(), &tols()).unwrap();
        assert!((r.lower_bound - 1.0).abs() < 1e-12 && (r.upper_bound - 1.0).abs() < 1e-12);
        assert!(r.is_onb && r.is_riesz && r.is_frame && r.is_tight_one);
    }

    #[test]
    fn union_of_scaled_onbs_is_parseval_not_riesz() {
        let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let mut vs: Vec<Vector> = generate_system(SystemKind::Onb, 3, 3, 1).unwrap().vectors().to_vec();
        vs.extend(
            generate_system(SystemKind::Onb, 3, 3, 2)
                .unwrap()
                .vectors()
                .iter()
                .cloned(),
        );
        let vs: Vec<Vector> = vs.iter().map(|v| v.scaled(s)).collect();
        let r = frame_bounds(&vs, &tols()).unwrap();
        assert!((r.lower_bound - 1.0).abs() < 1e-12 && (r.upper_bound - 1.0).abs() < 1e-12);
        assert!(r.is_frame && r.is_tight_one && !r.is_riesz && !r.is_onb);
    }

    #[test]
    fn frame_bounds_errors() {
        assert!(frame_bounds(&[], &tols()).is_err());
        let bad = [Vector::zeros(2), Vector::zeros(3)];
        assert!(matches!(frame_bounds(&bad, &tols()), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn remark_g_is_frame_and_not_effective() {
        let e = remark();
        let g = auxiliary_sequence(&e);
        let r = frame_bounds(g.vectors(), &tols()).unwrap();
        assert!(r.is_frame);
        assert!((r.lower_bound - 0.75).abs() < 1e-14);
        let (eff, defect) = effectiveness_tight(&e, &tols()).unwrap();
        assert!(!eff && defect > 0.1);
        let (eff, defect) = effectiveness_isometry(&e, &tols()).unwrap();
        assert!(!eff);
        assert!((defect - 3.0 / 16.0).abs() < 1e-14);
        let bound = almost_effective_bound(&e, &tols()).unwrap().unwrap();
        assert!((bound - 0.25).abs() < 1e-14);
    }

    #[test]
    fn repeated_vector_is_effective() {
        let e = generate_system(SystemKind::RepeatedVector, 3, 4, 7).unwrap();
        assert!(effectiveness_tight(&e, &tols()).unwrap().0);
        let (eff, defect) = effectiveness_isometry(&e, &tols()).unwrap();
        assert!(eff && defect < 1e-12);
        let spectrum = isometry_spectrum(&e).unwrap();
        assert!((spectrum[3] - 1.0).abs() < 1e-12 && spectrum[..3].iter().all(|x| x.abs() < 1e-12));
        assert!(almost_effective_bound(&e, &tols()).unwrap().unwrap() < 1e-10);
    }

    #[test]
    fn not_spanning_is_reported() {
        let e = generate_system(SystemKind::RandomUnit, 4, 2, 1).unwrap();
        assert!(matches!(
            effectiveness_tight(&e, &tols()),
            Err(Error::NotSpanning { .. })
        ));
        assert!(matches!(
            effectiveness_isometry(&e, &tols()),
            Err(Error::NotSpanning { .. })
        ));
        assert!(matches!(duality_defect(&e, &tols()), Err(Error::NotSpanning { .. })));
        assert!(matches!(convergence_bound(&e, &tols()), Err(Error::NotFrame { .. })));
        let report = analyze(&e, None, &tols()).unwrap();
        assert!(report.effectiveness.value.is_none() && report.effectiveness.reason.is_some());
    }

    #[test]
    fn remark_duality() {
        let e = remark();
        let g = auxiliary_sequence(&e);
        // <e_0, g_1> = <e_0, e_1> - <e_1, e_0> = 0, so e_0 is reproduced exactly
        let t0 = dual_synthesis(&e, &g, &e.vectors()[0]).unwrap();
        assert!(t0.max_abs_diff(&e.vectors()[0]) < 1e-15);
        let t1 = dual_synthesis(&e, &g, &e.vectors()[1]).unwrap();
        assert!(t1.sub(&e.vectors()[1]).norm() > 0.4);
        assert!((duality_defect(&e, &tols()).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn onb_convergence_bound_is_zero() {
        let e = UnitVectorSystem::from_rows(&DenseMatrix::identity(3)).unwrap();
        let b = convergence_bound(&e, &tols()).unwrap();
        assert_eq!((b.a1, b.a2, b.c1, b.bound), (1.0, 1.0, 1.0, 0.0));
    }

    #[test]
    fn solvability_verdicts() {
        let diag = DenseMatrix::from_real_rows(&[&[2.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[0.0, 0.0, 5.0]]).unwrap();
        assert_eq!(
            kaczmarz_solvability(&diag, &tols()).unwrap(),
            Solvability::AlwaysConverges
        );
        let h = 1.0 / 2f64.sqrt();
        let skew = DenseMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[h, h, 0.0], &[0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(
            kaczmarz_solvability(&skew, &tols()).unwrap(),
            Solvability::NotOrthogonalRows
        );
        let singular = DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(
            kaczmarz_solvability(&singular, &tols()).unwrap(),
            Solvability::NotSurjective
        );
        let wide = DenseMatrix::from_real_rows(&[&[1.0, 0.0]]).unwrap();
        assert!(kaczmarz_solvability(&wide, &tols()).is_err());
    }

    #[test]
    fn worst_case_matches_simulation() {
        let h = 1.0 / 2f64.sqrt();
        let a = DenseMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[h, h, 0.0], &[0.0, 0.0, 1.0]]).unwrap();
        let w = worst_case_rhs(&a).unwrap();
        assert!((w.rhs.norm() - 1.0).abs() < 1e-12);
        let measured = single_pass_error(&a, &w.rhs).unwrap();
        assert!((measured - w.limiting_error).abs() < 1e-12);
        assert!(w.limiting_error > 1e-3);
    }

    #[test]
    fn invalid_tolerances_rejected() {
        let t = Tolerances {
            frame_tol: -1.0,
            ..Tolerances::default()
        };
        assert!(analyze(&remark(), None, &t).is_err());
    }
}
