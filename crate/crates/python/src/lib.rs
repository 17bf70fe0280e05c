//! Python bindings. Vectors are lists of Python `complex`; a system is a list of vectors.

use kf_core::diagnostics::{self, Tolerances};
use kf_core::kaczmarz::partial_sum_via_g;
use kf_core::{DenseMatrix, LinearSystem, UnitVectorSystem, Vector};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: kf_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn system(vectors: Vec<Vec<Complex64>>) -> PyResult<UnitVectorSystem> {
    let vs = vectors
        .into_iter()
        .map(Vector::new)
        .collect::<kf_core::Result<Vec<_>>>()
        .map_err(py_err)?;
    UnitVectorSystem::new(vs).map_err(py_err)
}

fn matrix(rows: Vec<Vec<Complex64>>) -> PyResult<DenseMatrix> {
    let vs = rows
        .into_iter()
        .map(Vector::new)
        .collect::<kf_core::Result<Vec<_>>>()
        .map_err(py_err)?;
    DenseMatrix::from_rows(&vs).map_err(py_err)
}

fn lists(vs: &[Vector]) -> Vec<Vec<Complex64>> {
    vs.iter().map(|v| v.as_slice().to_vec()).collect()
}

fn dense_rows(m: &DenseMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Unit-vector system `e_0, ..., e_{count-1}` of the named kind.
#[pyfunction]
#[pyo3(signature = (kind, dim, count, seed=0))]
fn generate(kind: &str, dim: usize, count: usize, seed: u64) -> PyResult<Vec<Vec<Complex64>>> {
    let kind = kind.parse().map_err(py_err)?;
    let e = kf_core::generate_system(kind, dim, count, seed).map_err(py_err)?;
    Ok(lists(e.vectors()))
}

#[pyfunction]
fn auxiliary_sequence(vectors: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
    let e = system(vectors)?;
    Ok(lists(kf_core::auxiliary_sequence(&e).vectors()))
}

/// Dense inverse `C` of the correlation matrix.
#[pyfunction]
fn correlation_inverse(vectors: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
    let e = system(vectors)?;
    Ok(dense_rows(&kf_core::TriangularPair::new(&e).c.to_dense()))
}

/// Iterates `x_0, ..., x_{N-1}` of one pass towards `target`.
#[pyfunction]
fn single_pass(vectors: Vec<Vec<Complex64>>, target: Vec<Complex64>) -> PyResult<Vec<Vec<Complex64>>> {
    let e = system(vectors)?;
    let x = Vector::new(target).map_err(py_err)?;
    let traj = kf_core::single_pass(&e, &x).map_err(py_err)?;
    Ok(lists(&traj.iterates))
}

#[pyfunction]
fn partial_sum(vectors: Vec<Vec<Complex64>>, target: Vec<Complex64>, n: usize) -> PyResult<Vec<Complex64>> {
    let e = system(vectors)?;
    let x = Vector::new(target).map_err(py_err)?;
    let g = kf_core::auxiliary_sequence(&e);
    Ok(partial_sum_via_g(&e, &g, &x, n).map_err(py_err)?.into_inner())
}

/// Cyclic Kaczmarz from zero. Returns a dict with `solution`, `residual_norm`, `sweeps`, `converged`.
#[pyfunction]
#[pyo3(signature = (rows, rhs, max_sweeps=500, tol=1e-10))]
fn cyclic_solve<'py>(
    py: Python<'py>,
    rows: Vec<Vec<Complex64>>,
    rhs: Vec<Complex64>,
    max_sweeps: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let a = matrix(rows)?;
    let cols = a.cols();
    let s = LinearSystem::new(a, Vector::new(rhs).map_err(py_err)?).map_err(py_err)?;
    let traj = kf_core::cyclic_solve(&s, &Vector::zeros(cols), max_sweeps, tol).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("solution", traj.last().as_slice().to_vec())?;
    out.set_item("residual_norm", *traj.residual_norms.last().expect("nonempty"))?;
    out.set_item("sweeps", traj.sweeps)?;
    out.set_item("converged", traj.converged)?;
    Ok(out)
}

/// Optimal frame bounds `(A, B)`.
#[pyfunction]
fn frame_bounds(vectors: Vec<Vec<Complex64>>) -> PyResult<(f64, f64)> {
    let vs = vectors
        .into_iter()
        .map(Vector::new)
        .collect::<kf_core::Result<Vec<_>>>()
        .map_err(py_err)?;
    let r = diagnostics::frame_bounds(&vs, &Tolerances::default()).map_err(py_err)?;
    Ok((r.lower_bound, r.upper_bound))
}

/// Effectiveness summary of a spanning system, with default tolerances.
#[pyfunction]
fn effectiveness<'py>(py: Python<'py>, vectors: Vec<Vec<Complex64>>) -> PyResult<Bound<'py, PyDict>> {
    let e = system(vectors)?;
    let tols = Tolerances::default();
    let r = diagnostics::effectiveness_report(&e, &tols).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("effective", r.effective)?;
    out.set_item("tight_defect", r.tight_defect)?;
    out.set_item("isometry_defect", r.isometry_defect)?;
    out.set_item("almost_effective_bound", r.almost_effective_bound)?;
    out.set_item("methods_agree", r.methods_agree)?;
    out.set_item(
        "duality_defect",
        diagnostics::duality_defect(&e, &tols).map_err(py_err)?,
    )?;
    Ok(out)
}

#[pymodule]
fn kaczmarz_frames(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(auxiliary_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(single_pass, m)?)?;
    m.add_function(wrap_pyfunction!(partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_solve, m)?)?;
    m.add_function(wrap_pyfunction!(frame_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(effectiveness, m)?)?;
    Ok(())
}
