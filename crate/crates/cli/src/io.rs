use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use kf_core::mtx::{parse_matrix_market, parse_vector};
use kf_core::{DenseMatrix, Vector};

pub fn read_matrix(path: &Path) -> Result<DenseMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix_market(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_vector(path: &Path) -> Result<Vector> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_vector(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Complex entries as `[re, im]` pairs.
pub fn pairs(v: &Vector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Matrix whose row `n` is `conj(v_n)`, the file convention for unit systems.
pub fn conjugated_rows(vectors: &[Vector]) -> DenseMatrix {
    DenseMatrix::from_fn(vectors.len(), vectors[0].len(), |i, j| vectors[i][j].conj())
}
