//! Structured inverse, determinant and pseudoinverse of Hadamard products
//! `A∘Θ`, where `Θ = v·uᵀ` is a rank-one matrix of unit-modulus entries
//! `e^{j(θ_i+φ_k)}`.
//!
//! For nonsingular `A`, `(A∘Θ)⁻¹ = A⁻¹∘Θ^H` and `|A∘Θ| = |A|·e^{j(Σθ+Σφ)}`;
//! for full-rank rectangular `A`, `(A∘Θ)⁺ = A⁺∘Θ^H`. Once `A⁻¹` or `A⁺` is
//! known, every new angle matrix costs O(mn) instead of a fresh
//! factorization. Naive LU and normal-equation oracles live alongside the
//! structured routines so each identity can be checked numerically.

pub mod angle;
pub mod engine;
pub mod error;
pub mod io;
pub mod lu;
pub mod matrix;
pub mod pinv;
pub mod random;
pub mod report;
pub mod structured;
pub mod tolerance;
pub mod verify;

pub use num_complex::Complex64;

pub use angle::{unit_phasor, AngleMatrix, AngleVector, GramSide};
pub use engine::{naive_update, precompute, run_benchmark, BenchConfig, BenchRecord, PrecomputedBase};
pub use error::{Error, Result};
pub use io::{read_matrix, write_matrix, FileError, MatrixFile};
pub use lu::{det_lu, inverse_lu, LuFactorization};
pub use matrix::{ComplexScalar, DenseMatrix};
pub use pinv::{gram_hadamard_factorization, penrose_check, pinv_full_rank, pinv_structured, GramHadamard, PenroseReport};
pub use report::{Check, VerificationReport};
pub use structured::{
    adjugate, cofactor, det_structured, inverse_adjugate_structured, inverse_structured,
    inverse_structured_transposed, Minor, DEFAULT_ADJUGATE_CAP,
};
pub use tolerance::ToleranceConfig;
pub use verify::{run_suite, run_verification, RunReport, Suite, SuiteReport, SuiteSelection};
