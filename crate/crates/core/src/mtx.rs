//! MatrixMarket and plain-text vector I/O.
//!
//! Reading accepts `array` and `coordinate` layouts with `real` or `complex`
//! fields and `general` symmetry. Writing produces shortest round-trip
//! decimal numbers, so parse(write(m)) reproduces `m` bit for bit.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, UnitLowerTriangular, Vector, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(Layout, Field)> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(parse_err(
            line_no,
            "expected `%%MatrixMarket matrix <layout> <field> <symmetry>`",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(Error::UnsupportedFormat(format!("object `{}`", tokens[1])));
    }
    let layout = match tokens[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(Error::UnsupportedFormat(format!("layout `{other}`"))),
    };
    let field = match tokens[3].as_str() {
        "real" | "double" => Field::Real,
        "complex" => Field::Complex,
        other => return Err(Error::UnsupportedFormat(format!("field `{other}`"))),
    };
    if tokens[4] != "general" {
        return Err(Error::UnsupportedFormat(format!("symmetry `{}`", tokens[4])));
    }
    Ok((layout, field))
}

fn parse_number(line_no: usize, token: &str) -> Result<f64> {
    let v: f64 = token
        .parse()
        .map_err(|_| parse_err(line_no, format!("invalid number `{token}`")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_err(line_no, format!("non-finite value `{token}`")))
    }
}

fn parse_index(line_no: usize, token: &str, bound: usize, what: &str) -> Result<usize> {
    let i: usize = token
        .parse()
        .map_err(|_| parse_err(line_no, format!("invalid {what} index `{token}`")))?;
    if i == 0 || i > bound {
        return Err(parse_err(line_no, format!("{what} index {i} outside 1..={bound}")));
    }
    Ok(i - 1)
}

fn parse_value(line_no: usize, tokens: &[&str], field: Field) -> Result<Complex64> {
    let want = match field {
        Field::Real => 1,
        Field::Complex => 2,
    };
    if tokens.len() != want {
        return Err(parse_err(
            line_no,
            format!("expected {want} value token(s), found {}", tokens.len()),
        ));
    }
    let re = parse_number(line_no, tokens[0])?;
    let im = if want == 2 {
        parse_number(line_no, tokens[1])?
    } else {
        0.0
    };
    Ok(Complex64::new(re, im))
}

/// Parses a dense matrix from MatrixMarket text. Line numbers in errors are 1-based.
pub fn parse_matrix_market(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (layout, field) = parse_header(header_no, header)?;
    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_no, size_line) = body.next().ok_or_else(|| parse_err(header_no, "missing size line"))?;
    let sizes: Vec<&str> = size_line.split_whitespace().collect();
    let want = if layout == Layout::Array { 2 } else { 3 };
    if sizes.len() != want {
        return Err(parse_err(size_no, format!("size line needs {want} integers")));
    }
    let dims: Vec<usize> = sizes
        .iter()
        .map(|t| t.parse().map_err(|_| parse_err(size_no, format!("invalid size `{t}`"))))
        .collect::<Result<_>>()?;
    let (rows, cols) = (dims[0], dims[1]);
    if rows == 0 || cols == 0 {
        return Err(parse_err(size_no, "matrix dimensions must be positive"));
    }
    let mut m = DenseMatrix::zeros(rows, cols);

    match layout {
        Layout::Array => {
            let mut k = 0usize;
            for (no, line) in body {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if k == rows * cols {
                    return Err(parse_err(no, "more entries than the declared size"));
                }
                // column-major order
                m[(k % rows, k / rows)] = parse_value(no, &tokens, field)?;
                k += 1;
            }
            if k != rows * cols {
                return Err(parse_err(
                    size_no,
                    format!("expected {} entries, found {k}", rows * cols),
                ));
            }
        }
        Layout::Coordinate => {
            let nnz = dims[2];
            let mut seen = vec![false; rows * cols];
            let mut k = 0usize;
            for (no, line) in body {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if k == nnz {
                    return Err(parse_err(no, "more entries than declared"));
                }
                if tokens.len() < 2 {
                    return Err(parse_err(no, "missing indices"));
                }
                let i = parse_index(no, tokens[0], rows, "row")?;
                let j = parse_index(no, tokens[1], cols, "column")?;
                if std::mem::replace(&mut seen[i * cols + j], true) {
                    return Err(parse_err(no, format!("duplicate entry ({}, {})", i + 1, j + 1)));
                }
                m[(i, j)] = parse_value(no, &tokens[2..], field)?;
                k += 1;
            }
            if k != nnz {
                return Err(parse_err(size_no, format!("expected {nnz} entries, found {k}")));
            }
        }
    }
    Ok(m)
}

fn is_real(values: impl IntoIterator<Item = Complex64>) -> bool {
    values.into_iter().all(|z| z.im == 0.0)
}

fn push_value(out: &mut String, z: Complex64, real: bool) {
    if real {
        let _ = write!(out, "{:e}", z.re);
    } else {
        let _ = write!(out, "{:e} {:e}", z.re, z.im);
    }
}

fn field_name(real: bool) -> &'static str {
    if real {
        "real"
    } else {
        "complex"
    }
}

/// Dense `array` layout; `real` when every imaginary part is zero.
pub fn write_matrix_market_array(m: &DenseMatrix) -> String {
    let real = is_real(m.data().iter().copied());
    let mut out = format!(
        "%%MatrixMarket matrix array {} general\n{} {}\n",
        field_name(real),
        m.rows(),
        m.cols()
    );
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            push_value(&mut out, m[(i, j)], real);
            out.push('\n');
        }
    }
    out
}

/// Sparse `coordinate` layout of a unit lower-triangular matrix: the unit
/// diagonal plus every nonzero strictly-lower entry.
pub fn write_matrix_market_triangular(t: &UnitLowerTriangular) -> String {
    let n = t.n();
    let entries: Vec<(usize, usize, Complex64)> = (0..n)
        .map(|i| (i, i, Complex64::new(1.0, 0.0)))
        .chain(t.strict_entries().filter(|&(_, _, v)| v != ZERO))
        .collect();
    let real = is_real(entries.iter().map(|e| e.2));
    let mut sorted = entries;
    sorted.sort_by_key(|&(i, j, _)| (j, i));
    let mut out = format!(
        "%%MatrixMarket matrix coordinate {} general\n{n} {n} {}\n",
        field_name(real),
        sorted.len()
    );
    for (i, j, v) in sorted {
        let _ = write!(out, "{} {} ", i + 1, j + 1);
        push_value(&mut out, v, real);
        out.push('\n');
    }
    out
}

/// One value per line, either `re` or `re im`. Blank lines and `#` or `%` comments are skipped.
pub fn parse_vector(text: &str) -> Result<Vector> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = t.split_whitespace().collect();
        let field = if tokens.len() == 2 { Field::Complex } else { Field::Real };
        values.push(parse_value(i + 1, &tokens, field)?);
    }
    if values.is_empty() {
        return Err(parse_err(1, "no values"));
    }
    Vector::new(values)
}

pub fn write_vector(v: &Vector) -> String {
    let real = is_real(v.iter().copied());
    let mut out = String::new();
    for &z in v.iter() {
        push_value(&mut out, z, real);
        out.push('\n');
    }
    out
}
