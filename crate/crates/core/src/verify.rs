//! Randomized verification suites and the machine-readable run report.
//!
//! Each suite draws its instances from `rng_for(seed ^ tag, trial)`, so a
//! trial is reproducible on its own and trials may run in parallel without
//! changing the report. Tolerances are fixed per check; see the individual
//! trial functions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::GramSide;
use crate::error::{Error, Result};
use crate::lu::{det_lu, factorization_count, inverse_lu};
use crate::matrix::DenseMatrix;
use crate::pinv::{gram_hadamard_factorization, penrose_check, pinv_full_rank, pinv_structured};
use crate::random::{rng_for, uniform_angle_matrix, well_conditioned};
use crate::report::Check;
use crate::structured::{
    det_structured, inverse_adjugate_structured, inverse_structured, inverse_structured_transposed,
    DEFAULT_ADJUGATE_CAP,
};
use crate::tolerance::ToleranceConfig;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Selectable verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// `Θ^{∘(−T)} = Θ^H`.
    Lemma1,
    /// Determinant identity.
    Lemma2,
    /// Gram products and the triple product of angle matrices.
    Lemma3,
    /// Structured inverse, its transposed form, and the cofactor oracle.
    Thm1,
    /// Structured pseudoinverse and the Gram–Hadamard factorization.
    Thm2,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Lemma1, Suite::Lemma2, Suite::Lemma3, Suite::Thm1, Suite::Thm2];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Lemma1 | Suite::Lemma2 | Suite::Lemma3 => 100,
            Suite::Thm1 | Suite::Thm2 => 200,
        }
    }

    fn tag(self) -> u64 {
        let idx = Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1;
        idx.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }

    fn trial(self, rng: &mut ChaCha8Rng, trial: usize, tol: &ToleranceConfig) -> Result<Vec<Check>> {
        match self {
            Suite::Lemma1 => lemma1_trial(rng),
            Suite::Lemma2 => lemma2_trial(rng, tol),
            Suite::Lemma3 => lemma3_trial(rng, trial),
            Suite::Thm1 => thm1_trial(rng, trial, tol),
            Suite::Thm2 => thm2_trial(rng, trial, tol),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `all` or a single suite name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    One(Suite),
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::All => Suite::ALL.to_vec(),
            SuiteSelection::One(s) => vec![s],
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .iter()
            .find(|suite| suite.name() == s)
            .map(|&suite| SuiteSelection::One(suite))
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for SuiteSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteSelection::All => f.write_str("all"),
            SuiteSelection::One(s) => s.fmt(f),
        }
    }
}

/// Worst case of one named check across all trials of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub evaluations: usize,
    pub failures: usize,
    /// Largest `residual / tolerance` observed.
    pub worst_ratio: f64,
    /// Residual and tolerance at the worst ratio.
    pub worst_residual: f64,
    pub worst_tolerance: f64,
    pub pass: bool,
}

impl CheckSummary {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            evaluations: 0,
            failures: 0,
            worst_ratio: 0.0,
            worst_residual: 0.0,
            worst_tolerance: 0.0,
            pass: true,
        }
    }

    fn absorb(&mut self, check: &Check) {
        self.evaluations += 1;
        if !check.pass {
            self.failures += 1;
            self.pass = false;
        }
        let ratio = if check.tolerance > 0.0 {
            check.residual / check.tolerance
        } else if check.residual == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        // NaN residuals always become the worst case.
        let worse = self.evaluations == 1 || ratio.is_nan() || ratio > self.worst_ratio;
        if worse && !self.worst_ratio.is_nan() {
            self.worst_ratio = ratio;
            self.worst_residual = check.residual;
            self.worst_tolerance = check.tolerance;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub checks: Vec<CheckSummary>,
    pub pass: bool,
    pub wall_time_ms: f64,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs `trials` independent trials of one suite.
pub fn run_suite(suite: Suite, trials: usize, seed: u64, tol: &ToleranceConfig) -> SuiteReport {
    let start = Instant::now();
    let per_trial: Vec<Vec<Check>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng_for(seed ^ suite.tag(), trial as u64);
            suite.trial(&mut rng, trial, tol).unwrap_or_else(|e| {
                vec![Check::new(format!("error: {e}"), f64::INFINITY, 0.0)]
            })
        })
        .collect();

    let mut summaries: BTreeMap<String, CheckSummary> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for check in per_trial.iter().flatten() {
        let entry = summaries.entry(check.name.clone()).or_insert_with(|| {
            order.push(check.name.clone());
            CheckSummary::new(&check.name)
        });
        entry.absorb(check);
    }
    let checks: Vec<CheckSummary> = order.into_iter().map(|n| summaries.remove(&n).unwrap()).collect();
    let pass = trials > 0 && checks.iter().all(|c| c.pass);
    SuiteReport {
        suite,
        trials,
        checks,
        pass,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub tolerances: ToleranceConfig,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

/// Runs the selected suites. `trials = None` uses each suite's default count.
pub fn run_verification(
    selection: SuiteSelection,
    trials: Option<usize>,
    seed: u64,
    tol: &ToleranceConfig,
    command: impl Into<String>,
) -> RunReport {
    let start = Instant::now();
    let suites: Vec<SuiteReport> = selection
        .suites()
        .into_iter()
        .map(|s| run_suite(s, trials.unwrap_or_else(|| s.default_trials()), seed, tol))
        .collect();
    let pass = suites.iter().all(|s| s.pass);
    RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: command.into(),
        seed,
        tolerances: *tol,
        suites,
        pass,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn lemma1_trial(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (m, n) = (rng.random_range(1..=16), rng.random_range(1..=16));
    let t = uniform_angle_matrix(rng, m, n)?;
    let herm = t.hermitian().materialize();
    Ok(vec![
        Check::new(
            "inverse_transpose_vs_hermitian",
            t.hadamard_inverse_transpose().max_abs_diff(&herm)?,
            1e-14,
        ),
        Check::new(
            "hermitian_vs_conjugate_transpose",
            herm.max_abs_diff(&t.materialize().conjugate_transpose())?,
            1e-14,
        ),
        Check::new(
            "involution",
            t.hermitian().hermitian().max_deviation(&t)?,
            1e-14,
        ),
    ])
}

fn lemma2_trial(rng: &mut ChaCha8Rng, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let n = rng.random_range(1..=16);
    let (a, _) = well_conditioned(rng, n, n, tol)?;
    let t = uniform_angle_matrix(rng, n, n)?;
    let structured = det_structured(&a, &t)?;
    let direct = det_lu(&a.hadamard_product(&t.materialize())?)?;
    let scale = 1.0 + det_lu(&a)?.norm();
    Ok(vec![Check::new("det_structured_vs_lu", (structured - direct).norm(), 1e-10 * scale)])
}

/// The 2×2 display `Θ^HΘ = [[2, 2e^{j(φ2−φ1)}], [2e^{j(φ1−φ2)}, 2]]`.
fn gram_two_by_two_check(rng: &mut ChaCha8Rng) -> Result<Check> {
    let t = uniform_angle_matrix(rng, 2, 2)?;
    let d = t.materialize();
    let g = d.conjugate_transpose().matmul(&d)?;
    let (p1, p2) = (t.phi()[0], t.phi()[1]);
    let two = |phase: f64| crate::angle::unit_phasor(phase) * 2.0;
    let expect = DenseMatrix::from_rows(&[
        [Complex64::new(2.0, 0.0), two(p2 - p1)],
        [two(p1 - p2), Complex64::new(2.0, 0.0)],
    ])?;
    let magnitude_dev = g.data().iter().map(|z| (z.norm() - 2.0).abs()).fold(0.0, f64::max);
    Ok(Check::new(
        "gram_2x2_display",
        g.max_abs_diff(&expect)?.max(magnitude_dev),
        8.0 * f64::EPSILON,
    ))
}

fn lemma3_trial(rng: &mut ChaCha8Rng, trial: usize) -> Result<Vec<Check>> {
    let (m, n) = (rng.random_range(1..=64), rng.random_range(1..=64));
    let t = uniform_angle_matrix(rng, m, n)?;
    let d = t.materialize();
    let dh = d.conjugate_transpose();
    let left = dh.matmul(&d)?;
    let right = d.matmul(&dh)?;

    let (sl, gl) = t.gram(GramSide::Left);
    let (sr, gr) = t.gram(GramSide::Right);
    let left_dev = left.max_abs_diff(&gl.materialize().scale(Complex64::new(sl as f64, 0.0)))?;
    let right_dev = right.max_abs_diff(&gr.materialize().scale(Complex64::new(sr as f64, 0.0)))?;

    let mn = (m * n) as f64;
    let triple = left.matmul(&dh)?;
    let triple_dev = triple.max_abs_diff(&t.hermitian().materialize().scale(Complex64::new(mn, 0.0)))?;

    let mut checks = vec![
        Check::new("gram_left", left_dev, sl as f64 * 1e-13),
        Check::new("gram_right", right_dev, sr as f64 * 1e-13),
        Check::new("triple_product", triple_dev, mn * 1e-13),
    ];
    if trial == 0 {
        checks.push(gram_two_by_two_check(rng)?);
    }
    Ok(checks)
}

fn thm1_trial(rng: &mut ChaCha8Rng, trial: usize, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let n = rng.random_range(1..=32);
    let (a, _) = well_conditioned(rng, n, n, tol)?;
    let t = uniform_angle_matrix(rng, n, n)?;
    let masked = a.hadamard_product(&t.materialize())?;
    let bound = 1e-8 * n as f64;

    let before = factorization_count();
    let x = inverse_structured(&a, &t, tol)?;
    let factorizations = (factorization_count() - before) as f64;

    let oracle = inverse_lu(&masked, tol)?;
    let transposed = inverse_structured_transposed(&a, &t, tol)?;
    let transposed_oracle = inverse_lu(&a.hadamard_product(&t.materialize().transpose())?, tol)?;

    // Cofactor oracle on a separate small instance, cycling n = 1..=4.
    let small = trial % 4 + 1;
    let (b, _) = well_conditioned(rng, small, small, tol)?;
    let s = uniform_angle_matrix(rng, small, small)?;
    let adj = inverse_adjugate_structured(&b, &s, tol, DEFAULT_ADJUGATE_CAP)?;
    let adj_dev = adj.max_abs_diff(&inverse_structured(&b, &s, tol)?)?;

    Ok(vec![
        Check::new("left_inverse", x.matmul(&masked)?.identity_residual()?, bound),
        Check::new("right_inverse", masked.matmul(&x)?.identity_residual()?, bound),
        Check::new("lu_oracle", x.frobenius_distance(&oracle)?, bound),
        Check::new("single_factorization", (factorizations - 1.0).abs(), 0.0),
        Check::new("transposed_vs_lu", transposed.frobenius_distance(&transposed_oracle)?, bound),
        Check::new("adjugate_oracle", adj_dev, 1e-10),
    ])
}

fn thm2_trial(rng: &mut ChaCha8Rng, trial: usize, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let (m, n) = match trial % 3 {
        0 => {
            let m = rng.random_range(2..=24);
            (m, rng.random_range(1..=(m - 1).min(12)))
        }
        1 => {
            let n = rng.random_range(1..=12);
            (n, n)
        }
        _ => {
            let n = rng.random_range(2..=24);
            (rng.random_range(1..=(n - 1).min(12)), n)
        }
    };
    let (a, _) = well_conditioned(rng, m, n, tol)?;
    let t = uniform_angle_matrix(rng, m, n)?;
    let masked = a.hadamard_product(&t.materialize())?;

    let x = pinv_structured(&a, &t, tol)?;
    let a_pinv_norm = pinv_full_rank(&a, tol)?.frobenius_norm();
    let penrose = penrose_check(&masked, &x, tol)?;
    let oracle = pinv_full_rank(&masked, tol)?;

    let factor = gram_hadamard_factorization(&a, &t)?;
    let gram_dev = masked.conjugate_transpose().matmul(&masked)?.max_abs_diff(&factor.product())?;

    let dual = pinv_structured(&a.conjugate_transpose(), &t.hermitian(), tol)?;

    let penrose_bound = 1e-8 * (1.0 + a.frobenius_norm());
    let oracle_bound = 1e-8 * (1.0 + a_pinv_norm);
    let mut checks = vec![
        Check::new("penrose", penrose.max_residual(), penrose_bound),
        Check::new("pinv_oracle", x.frobenius_distance(&oracle)?, oracle_bound),
        Check::new("gram_hadamard", gram_dev, 1e-12 * (m * n) as f64),
        Check::new("adjoint_duality", dual.frobenius_distance(&x.conjugate_transpose())?, oracle_bound),
    ];
    if m == n {
        checks.push(Check::new(
            "square_degeneration",
            x.max_abs_diff(&inverse_structured(&a, &t, tol)?)?,
            1e-10,
        ));
    }
    Ok(checks)
}
