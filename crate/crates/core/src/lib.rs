//! Kaczmarz iterations on systems of unit vectors, with the auxiliary
//! sequence that turns a single pass into a frame expansion.
//!
//! A finite system `e_0, ..., e_{N-1}` of unit vectors in `C^d` determines the
//! unit lower-triangular correlation matrix `M` (`m_ij = <e_i, e_j>` for
//! `i > j`), its inverse `C`, and the auxiliary vectors `g_n = e_n + sum_{i<n} c_ni e_i`.
//! One Kaczmarz pass started at zero then equals `x_n = sum_{i<=n} <x, g_i> e_i`.

pub mod diagnostics;
pub mod eigen;
pub mod error;
pub mod generate;
pub mod kaczmarz;
pub mod linalg;
pub mod lu;
pub mod mtx;
pub mod systems;

pub use diagnostics::{analyze, DiagnosticsReport, Tolerances};
pub use error::{Error, Result};
pub use generate::{generate_system, SystemKind};
pub use kaczmarz::{cyclic_solve, data_driven_pass, single_pass, KaczmarzTrajectory, LinearSystem};
pub use linalg::{DenseMatrix, UnitLowerTriangular, Vector};
pub use systems::{auxiliary_sequence, AuxiliarySequence, TriangularPair, UnitVectorSystem};
