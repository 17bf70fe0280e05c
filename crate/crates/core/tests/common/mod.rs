//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use kf_core::generate::{generate_system, SystemKind};
use kf_core::{DenseMatrix, UnitVectorSystem, Vector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi on the
/// real symmetric embedding `[[X, -Y], [Y, X]]` of `H = X + iY`. Every
/// eigenvalue of `H` appears twice in the embedding.
pub fn jacobi_eigenvalues(h: &DenseMatrix) -> Vec<f64> {
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![vec![0.0f64; m]; m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|p| (0..m).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (head, tail) = a.split_at_mut(q);
                for (apk, aqk) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (x, y) = (*apk, *aqk);
                    *apk = c * x - s * y;
                    *aqk = s * x + c * y;
                }
            }
        }
    }
    let mut diag: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    diag.sort_by(f64::total_cmp);
    diag.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

/// Dense inverse by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse(a: &DenseMatrix) -> DenseMatrix {
    let n = a.rows();
    let mut aug: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Complex64> = a.row(i).to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| aug[x][col].norm().total_cmp(&aug[y][col].norm()))
            .unwrap();
        aug.swap(col, pivot);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = aug[r][col];
                let pivot_row = aug[col].clone();
                for (v, pv) in aug[r].iter_mut().zip(pivot_row) {
                    *v -= f * pv;
                }
            }
        }
    }
    DenseMatrix::from_fn(n, n, |i, j| aug[i][n + j])
}

pub fn random_hermitian(n: usize, seed: u64) -> DenseMatrix {
    let g = kf_core::generate::random_gaussian_matrix(n, n, seed);
    g.hermitian_part().unwrap()
}

pub fn random_vector(dim: usize, rng: &mut impl Rng) -> Vector {
    let entries = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Vector::new(entries).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Condition number from the extreme eigenvalues of `A* A` (Jacobi oracle).
pub fn condition_number(a: &DenseMatrix) -> f64 {
    let ata = a.adjoint().matmul(a).unwrap();
    let eig = jacobi_eigenvalues(&ata);
    (eig[eig.len() - 1] / eig[0]).sqrt()
}

/// Mixed corpus of seeded systems: 200 entries with `d <= 16`, `N <= 32`.
pub fn random_corpus() -> Vec<UnitVectorSystem> {
    let mut r = rng(2024);
    (0..200u64)
        .map(|seed| {
            let kind = SystemKind::ALL[(seed % 6) as usize];
            let d = r.random_range(2..=16usize);
            let n = match kind {
                SystemKind::Onb | SystemKind::PerturbedOnb | SystemKind::Remark => d,
                SystemKind::RepeatedVector => d + 1,
                SystemKind::ParsevalRows => r.random_range(d..=32),
                SystemKind::RandomUnit => r.random_range(1..=32),
            };
            generate_system(kind, d, n, seed).unwrap()
        })
        .collect()
}

/// Spanning systems whose correlation matrix is exactly banded past a short prefix.
pub fn spanning_corpus() -> Vec<(SystemKind, UnitVectorSystem)> {
    let kinds = [
        SystemKind::Onb,
        SystemKind::RepeatedVector,
        SystemKind::Remark,
        SystemKind::PerturbedOnb,
    ];
    (0..100u64)
        .map(|seed| {
            let kind = kinds[(seed % 4) as usize];
            let d = 2 + (seed as usize % 9);
            let n = if kind == SystemKind::RepeatedVector { d + 1 } else { d };
            (kind, generate_system(kind, d, n, seed).unwrap())
        })
        .collect()
}
