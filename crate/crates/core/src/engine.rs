//! Phase-update engine.
//!
//! The base matrix is inverted (or pseudoinverted) once; each subsequent
//! angle matrix `Θ_k` is served as `base⁺ ∘ Θ_k^H` with O(mn) work and
//! m + n trigonometric evaluations. The naive path masks `A` and
//! refactors from scratch for every update.

use std::hint::black_box;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::AngleMatrix;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::pinv::{penrose_check, pinv_full_rank};
use crate::random::{rng_for, uniform_angle_matrix, well_conditioned};
use crate::tolerance::ToleranceConfig;

/// Default upper bound on either benchmark dimension.
pub const DEFAULT_DIMENSION_CAP: usize = 2048;

/// `A⁻¹` or `A⁺`, computed once and reused for every phase update.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecomputedBase {
    shape: (usize, usize),
    base_pinv: DenseMatrix,
    base_norm: f64,
    created_from_seed: Option<u64>,
}

impl PrecomputedBase {
    /// Pseudoinverts `a` and checks the four Penrose conditions.
    pub fn new(a: &DenseMatrix, tol: &ToleranceConfig) -> Result<Self> {
        let base_pinv = pinv_full_rank(a, tol)?;
        let report = penrose_check(a, &base_pinv, tol)?;
        if !report.pass {
            return Err(Error::Consistency(format!(
                "base pseudoinverse fails Penrose conditions (max residual {:e}, threshold {:e})",
                report.max_residual(),
                report.threshold
            )));
        }
        Ok(Self {
            shape: a.shape(),
            base_pinv,
            base_norm: a.frobenius_norm(),
            created_from_seed: None,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.created_from_seed = Some(seed);
        self
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn base_pinv(&self) -> &DenseMatrix {
        &self.base_pinv
    }

    /// `‖A‖_F` of the source matrix.
    pub fn base_norm(&self) -> f64 {
        self.base_norm
    }

    pub fn created_from_seed(&self) -> Option<u64> {
        self.created_from_seed
    }

    /// `(A∘Θ)⁺ = base⁺ ∘ Θ^H`. Performs no factorization.
    pub fn apply_update(&self, t: &AngleMatrix) -> Result<DenseMatrix> {
        if t.shape() != self.shape {
            return Err(Error::DimensionMismatch {
                op: "apply_update",
                left_rows: self.shape.0,
                left_cols: self.shape.1,
                right_rows: t.rows(),
                right_cols: t.cols(),
            });
        }
        t.mask_hermitian_factored(&self.base_pinv)
    }
}

/// Shorthand for [`PrecomputedBase::new`].
pub fn precompute(a: &DenseMatrix, tol: &ToleranceConfig) -> Result<PrecomputedBase> {
    PrecomputedBase::new(a, tol)
}

/// Reference path: materialize `Θ`, mask `A`, then invert or pseudoinvert
/// the product from scratch.
///
/// A full-rank `A` always gives a full-rank `A∘Θ`, so a singular product
/// is reported as an internal consistency error.
pub fn naive_update(a: &DenseMatrix, t: &AngleMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    if t.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            op: "naive_update",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: t.rows(),
            right_cols: t.cols(),
        });
    }
    let masked = a.hadamard_product(&t.materialize())?;
    pinv_full_rank(&masked, tol).map_err(|e| match e {
        Error::Singular { .. } | Error::RankDeficient { .. } => {
            Error::Consistency(format!("masked matrix lost rank: {e}"))
        }
        e => e,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub rows: usize,
    pub cols: usize,
    pub updates: usize,
    pub seed: u64,
    pub tol: ToleranceConfig,
    pub dimension_cap: usize,
}

impl BenchConfig {
    pub fn new(rows: usize, cols: usize, updates: usize, seed: u64) -> Self {
        Self {
            rows,
            cols,
            updates,
            seed,
            tol: ToleranceConfig::default(),
            dimension_cap: DEFAULT_DIMENSION_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.tol.validate()?;
        if self.updates == 0 {
            return Err(Error::Config("update count must be at least 1".into()));
        }
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Config(format!(
                "dimensions must be positive, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows > self.dimension_cap || self.cols > self.dimension_cap {
            return Err(Error::Config(format!(
                "dimensions {}x{} exceed cap {}",
                self.rows, self.cols, self.dimension_cap
            )));
        }
        Ok(())
    }

    /// Residual bound `residual_eps · max(m, n)` for cross-checks.
    pub fn residual_tolerance(&self) -> f64 {
        self.tol.residual_eps * self.rows.max(self.cols) as f64
    }
}

/// The base matrix generated for `seed` (stream 0).
pub fn bench_base_matrix(rows: usize, cols: usize, seed: u64, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    Ok(well_conditioned(&mut rng_for(seed, 0), rows, cols, tol)?.0)
}

/// Angle matrix for update `k` of the stream keyed by `seed` (stream k + 1).
pub fn bench_update(rows: usize, cols: usize, seed: u64, k: usize) -> Result<AngleMatrix> {
    uniform_angle_matrix(&mut rng_for(seed, k as u64 + 1), rows, cols)
}

/// Indices of the updates cross-checked against the naive path:
/// `max(1, updates / 100)` of them, evenly spaced.
pub fn sampled_updates(updates: usize) -> Vec<usize> {
    let count = (updates / 100).max(1);
    (0..count).map(|i| i * updates / count).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub rows: usize,
    pub cols: usize,
    pub updates: usize,
    /// Median nanoseconds per structured update.
    pub structured_ns_per_update: f64,
    /// Median nanoseconds per naive update.
    pub naive_ns_per_update: f64,
    pub max_residual: f64,
    pub residual_tolerance: f64,
    pub seed: u64,
    pub pass: bool,
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str = "rows,cols,updates,structured_ns,naive_ns,max_residual,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:e},{}",
            self.rows,
            self.cols,
            self.updates,
            self.structured_ns_per_update,
            self.naive_ns_per_update,
            self.max_residual,
            self.seed
        )
    }

    pub fn speedup(&self) -> f64 {
        self.naive_ns_per_update / self.structured_ns_per_update
    }
}

fn median(samples: &mut [u128]) -> f64 {
    samples.sort_unstable();
    let len = samples.len();
    if len % 2 == 1 {
        samples[len / 2] as f64
    } else {
        (samples[len / 2 - 1] + samples[len / 2]) as f64 / 2.0
    }
}

/// Residual of one sampled update: the structured/naive gap, and for square
/// shapes also `‖X(A∘Θ) − I‖_F`.
fn cross_check(
    a: &DenseMatrix,
    base: &PrecomputedBase,
    t: &AngleMatrix,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let fast = base.apply_update(t)?;
    let slow = naive_update(a, t, tol)?;
    let mut residual = fast.frobenius_distance(&slow)?;
    if a.is_square() {
        let masked = a.hadamard_product(&t.materialize())?;
        residual = residual.max(fast.matmul(&masked)?.identity_residual()?);
    }
    Ok(residual)
}

/// Generates `A` and the update stream from `config.seed`, times both paths
/// on a single thread, then cross-checks the sampled updates.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchRecord> {
    config.validate()?;
    let (m, n, tol) = (config.rows, config.cols, &config.tol);
    let a = bench_base_matrix(m, n, config.seed, tol)?;
    let base = precompute(&a, tol)?.with_seed(config.seed);
    let stream: Vec<AngleMatrix> = (0..config.updates)
        .map(|k| bench_update(m, n, config.seed, k))
        .collect::<Result<_>>()?;

    // Warm-up, untimed.
    black_box(base.apply_update(&stream[0])?);
    black_box(naive_update(&a, &stream[0], tol)?);

    let mut fast_ns = Vec::with_capacity(stream.len());
    let mut slow_ns = Vec::with_capacity(stream.len());
    for t in &stream {
        let start = Instant::now();
        black_box(base.apply_update(black_box(t))?);
        fast_ns.push(start.elapsed().as_nanos());

        let start = Instant::now();
        black_box(naive_update(black_box(&a), black_box(t), tol)?);
        slow_ns.push(start.elapsed().as_nanos());
    }

    let residuals: Vec<f64> = sampled_updates(config.updates)
        .into_par_iter()
        .map(|k| cross_check(&a, &base, &stream[k], tol))
        .collect::<Result<_>>()?;
    let max_residual = residuals.into_iter().fold(0.0, f64::max);
    let residual_tolerance = config.residual_tolerance();

    Ok(BenchRecord {
        rows: m,
        cols: n,
        updates: config.updates,
        structured_ns_per_update: median(&mut fast_ns),
        naive_ns_per_update: median(&mut slow_ns),
        max_residual,
        residual_tolerance,
        seed: config.seed,
        pass: max_residual <= residual_tolerance,
    })
}
