//! Seeded random instances.
//!
//! Every generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) keyed with
//! `seed_from_u64(seed)`; independent streams (per trial, per update) are
//! selected with `set_stream`, so instance `k` is reachable without
//! replaying the first `k − 1`. Complex entries have real and imaginary
//! parts drawn i.i.d. from the standard normal; phases are uniform on
//! `[0, 2π)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::angle::AngleMatrix;
use crate::error::{Error, Result};
use crate::lu::inverse_lu;
use crate::matrix::DenseMatrix;
use crate::pinv::pinv_full_rank;
use crate::tolerance::ToleranceConfig;

/// Attempts before [`well_conditioned`] gives up.
pub const MAX_REDRAWS: usize = 1000;

/// Generator for `(seed, stream)`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_normal_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Result<DenseMatrix> {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    DenseMatrix::from_vec(rows, cols, data)
}

pub fn uniform_phases<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(0.0..TAU)).collect()
}

pub fn uniform_angle_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Result<AngleMatrix> {
    let theta = uniform_phases(rng, rows);
    let phi = uniform_phases(rng, cols);
    AngleMatrix::new(theta, phi)
}

/// `‖A‖_F · ‖A⁺‖_F` (with `A⁺ = A⁻¹` when square); infinite when `A` fails
/// the rank test.
pub fn condition_proxy(a: &DenseMatrix, tol: &ToleranceConfig) -> Result<f64> {
    let inv = if a.is_square() {
        inverse_lu(a, tol)
    } else {
        pinv_full_rank(a, tol)
    };
    match inv {
        Ok(x) => Ok(a.frobenius_norm() * x.frobenius_norm()),
        Err(e) if e.is_numerical() => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// Complex normal matrix redrawn until its condition proxy is at most
/// `tol.condition_cap`. Returns the matrix and its proxy.
pub fn well_conditioned<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    tol: &ToleranceConfig,
) -> Result<(DenseMatrix, f64)> {
    for _ in 0..MAX_REDRAWS {
        let a = complex_normal_matrix(rng, rows, cols)?;
        let proxy = condition_proxy(&a, tol)?;
        if proxy <= tol.condition_cap {
            return Ok((a, proxy));
        }
    }
    Err(Error::Config(format!(
        "no {rows}x{cols} instance with condition proxy <= {} after {MAX_REDRAWS} draws",
        tol.condition_cap
    )))
}
