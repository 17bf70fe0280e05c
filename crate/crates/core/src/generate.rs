//! Seeded generators for test and demo systems.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` with complex
//! Gaussian entries drawn from `rand_distr::StandardNormal`, so a given
//! `(kind, dim, count, seed)` always produces the same system.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Vector, ZERO};
use crate::systems::UnitVectorSystem;

/// Amplitude of the perturbation applied by [`SystemKind::PerturbedOnb`].
pub const PERTURBATION: f64 = 0.25;
/// Number of leading vectors perturbed by [`SystemKind::PerturbedOnb`]; the rest stay orthonormal.
pub const PERTURBED_PREFIX: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// Columns of a random unitary matrix; `count == dim`.
    Onb,
    /// Random orthonormal basis whose first few vectors are nudged and renormalized; `count == dim`.
    PerturbedOnb,
    /// `e_0, e_0, u_1, ..., u_{d-1}` for an orthonormal basis `u`; `count == dim + 1`.
    RepeatedVector,
    /// Canonical basis with `e_1 = e_0 / 2 + (sqrt(3)/2) delta_1`, so `<e_0, e_1> = 1/2`; `count == dim >= 2`.
    /// Deterministic: the seed is ignored.
    Remark,
    /// Rotated harmonic unit-norm tight frame, frame operator `(count/dim) I`; `count >= dim`.
    ParsevalRows,
    /// Independent uniformly distributed unit vectors; any `count`.
    RandomUnit,
}

impl SystemKind {
    pub const ALL: [SystemKind; 6] = [
        SystemKind::Onb,
        SystemKind::PerturbedOnb,
        SystemKind::RepeatedVector,
        SystemKind::Remark,
        SystemKind::ParsevalRows,
        SystemKind::RandomUnit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Onb => "onb",
            SystemKind::PerturbedOnb => "perturbed_onb",
            SystemKind::RepeatedVector => "repeated_vector",
            SystemKind::Remark => "remark",
            SystemKind::ParsevalRows => "parseval_rows",
            SystemKind::RandomUnit => "random_unit",
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SystemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidShape(format!("unknown system kind `{s}`")))
    }
}

pub(crate) fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub(crate) fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> Vector {
    loop {
        let v = Vector::from_raw((0..dim).map(|_| gaussian(rng)).collect());
        let n = v.norm();
        if n > 1e-8 {
            return v.scaled(Complex64::new(1.0 / n, 0.0));
        }
    }
}

/// Complex Gaussian `rows x cols` matrix.
pub fn random_gaussian_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| gaussian(&mut rng))
}

/// Orthonormal basis of `C^dim` from Gram-Schmidt (two passes) on Gaussian vectors.
pub(crate) fn random_orthonormal_basis(rng: &mut impl Rng, dim: usize) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v = Vector::from_raw((0..dim).map(|_| gaussian(rng)).collect());
        for _ in 0..2 {
            for b in &basis {
                let coeff = v.inner(b);
                v.axpy(-coeff, b);
            }
        }
        let n = v.norm();
        if n > 1e-6 {
            basis.push(v.scaled(Complex64::new(1.0 / n, 0.0)));
        }
    }
    basis
}

/// Random unitary matrix; its columns form an orthonormal basis.
pub fn random_unitary(dim: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = random_orthonormal_basis(&mut rng, dim);
    DenseMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

fn require(cond: bool, kind: SystemKind, dim: usize, count: usize, need: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidShape(format!(
            "{kind} with dim {dim}, count {count}: requires {need}"
        )))
    }
}

fn normalized(v: Vector) -> Vector {
    let n = v.norm();
    v.scaled(Complex64::new(1.0 / n, 0.0))
}

pub fn generate_system(kind: SystemKind, dim: usize, count: usize, seed: u64) -> Result<UnitVectorSystem> {
    require(dim >= 1 && count >= 1, kind, dim, count, "dim >= 1 and count >= 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors = match kind {
        SystemKind::Onb => {
            require(count == dim, kind, dim, count, "count == dim")?;
            random_orthonormal_basis(&mut rng, dim)
        }
        SystemKind::PerturbedOnb => {
            require(count == dim, kind, dim, count, "count == dim")?;
            let mut basis = random_orthonormal_basis(&mut rng, dim);
            if dim >= 2 {
                for v in basis.iter_mut().take(PERTURBED_PREFIX.min(dim)) {
                    let w = random_unit_vector(&mut rng, dim);
                    let mut p = v.clone();
                    p.axpy(Complex64::new(PERTURBATION, 0.0), &w);
                    *v = normalized(p);
                }
            }
            basis
        }
        SystemKind::RepeatedVector => {
            require(count == dim + 1, kind, dim, count, "count == dim + 1")?;
            let basis = random_orthonormal_basis(&mut rng, dim);
            let mut out = vec![basis[0].clone()];
            out.extend(basis);
            out
        }
        SystemKind::Remark => {
            require(count == dim && dim >= 2, kind, dim, count, "count == dim >= 2")?;
            let mut out: Vec<Vector> = (0..dim).map(|k| Vector::basis(dim, k)).collect::<Result<_>>()?;
            let mut e1 = vec![ZERO; dim];
            e1[0] = Complex64::new(0.5, 0.0);
            e1[1] = Complex64::new(3f64.sqrt() / 2.0, 0.0);
            out[1] = Vector::from_raw(e1);
            out
        }
        SystemKind::ParsevalRows => {
            require(count >= dim, kind, dim, count, "count >= dim")?;
            let rotation = random_orthonormal_basis(&mut rng, dim);
            let scale = 1.0 / (dim as f64).sqrt();
            (0..count)
                .map(|n| {
                    let mut v = Vector::zeros(dim);
                    for (k, u) in rotation.iter().enumerate() {
                        let angle = 2.0 * std::f64::consts::PI * ((n * k) % count) as f64 / count as f64;
                        v.axpy(Complex64::from_polar(scale, angle), u);
                    }
                    normalized(v)
                })
                .collect()
        }
        SystemKind::RandomUnit => (0..count).map(|_| random_unit_vector(&mut rng, dim)).collect(),
    };
    UnitVectorSystem::new(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::gram_matrix;

    #[test]
    fn onb_gram_is_identity() {
        let e = generate_system(SystemKind::Onb, 4, 4, 1).unwrap();
        let g = gram_matrix(e.vectors());
        assert!(g.max_abs_diff(&DenseMatrix::identity(4)).unwrap() < 1e-12);
    }

    #[test]
    fn remark_inner_product_is_half() {
        let e = generate_system(SystemKind::Remark, 4, 4, 0).unwrap();
        let ip = e.vectors()[0].inner(&e.vectors()[1]);
        assert_eq!(ip, Complex64::new(0.5, 0.0));
        assert_eq!(e, generate_system(SystemKind::Remark, 4, 4, 99).unwrap());
    }

    #[test]
    fn repeated_vector_structure() {
        let e = generate_system(SystemKind::RepeatedVector, 3, 4, 7).unwrap();
        let v = e.vectors();
        assert_eq!(v[0], v[1]);
        let rest: Vec<Vector> = vec![v[0].clone(), v[2].clone(), v[3].clone()];
        let g = gram_matrix(&rest);
        assert!(g.max_abs_diff(&DenseMatrix::identity(3)).unwrap() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        for kind in SystemKind::ALL {
            let (d, n) = match kind {
                SystemKind::RepeatedVector => (3, 4),
                SystemKind::ParsevalRows | SystemKind::RandomUnit => (3, 5),
                _ => (3, 3),
            };
            let a = generate_system(kind, d, n, 42).unwrap();
            let b = generate_system(kind, d, n, 42).unwrap();
            assert_eq!(a, b, "{kind}");
        }
        assert_ne!(
            generate_system(SystemKind::Onb, 3, 3, 1).unwrap(),
            generate_system(SystemKind::Onb, 3, 3, 2).unwrap()
        );
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            generate_system(SystemKind::Onb, 4, 3, 0),
            Err(Error::InvalidShape(_))
        ));
        assert!(generate_system(SystemKind::ParsevalRows, 4, 3, 0).is_err());
        assert!(generate_system(SystemKind::Remark, 1, 1, 0).is_err());
        assert!(generate_system(SystemKind::RepeatedVector, 3, 3, 0).is_err());
        assert!(generate_system(SystemKind::RandomUnit, 4, 2, 0).is_ok());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in SystemKind::ALL {
            assert_eq!(kind.name().parse::<SystemKind>().unwrap(), kind);
        }
        assert!("nope".parse::<SystemKind>().is_err());
    }
}
