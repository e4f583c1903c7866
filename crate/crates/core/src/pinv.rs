//! Full-rank Moore–Penrose pseudoinverses and the structured
//! pseudoinverse `(A∘Θ)⁺ = A⁺∘Θ^H`.
//!
//! Gram systems are solved by LU. Squaring the condition number is a known
//! cost of this route; callers with ill-conditioned data should expect it.

use serde::{Deserialize, Serialize};

use crate::angle::{AngleMatrix, GramSide};
use crate::error::{Error, Result};
use crate::lu::LuFactorization;
use crate::matrix::DenseMatrix;
use crate::tolerance::ToleranceConfig;

/// Residuals of the four Penrose conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenroseReport {
    /// `‖AXA − A‖_F`
    pub r1: f64,
    /// `‖XAX − X‖_F`
    pub r2: f64,
    /// `‖(AX)^H − AX‖_F`
    pub r3: f64,
    /// `‖(XA)^H − XA‖_F`
    pub r4: f64,
    /// `residual_eps · (1 + ‖A‖_F)`
    pub threshold: f64,
    pub pass: bool,
}

impl PenroseReport {
    pub fn max_residual(&self) -> f64 {
        self.r1.max(self.r2).max(self.r3).max(self.r4)
    }
}

pub fn penrose_check(a: &DenseMatrix, x: &DenseMatrix, tol: &ToleranceConfig) -> Result<PenroseReport> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(x.mismatch(a, "penrose_check"));
    }
    let ax = a.matmul(x)?;
    let xa = x.matmul(a)?;
    let r1 = ax.matmul(a)?.frobenius_distance(a)?;
    let r2 = xa.matmul(x)?.frobenius_distance(x)?;
    let r3 = ax.conjugate_transpose().frobenius_distance(&ax)?;
    let r4 = xa.conjugate_transpose().frobenius_distance(&xa)?;
    let threshold = tol.residual_eps * (1.0 + a.frobenius_norm());
    let pass = [r1, r2, r3, r4].iter().all(|&r| r <= threshold);
    Ok(PenroseReport {
        r1,
        r2,
        r3,
        r4,
        threshold,
        pass,
    })
}

fn gram_lu(gram: &DenseMatrix, a_norm: f64, tol: &ToleranceConfig) -> Result<LuFactorization> {
    let lu = LuFactorization::new(gram)?;
    let threshold = tol.rank_eps * a_norm * a_norm;
    let pivot = lu.min_pivot();
    if pivot <= threshold {
        return Err(Error::RankDeficient { pivot, threshold });
    }
    Ok(lu)
}

/// `A⁺` for full-rank `A`.
///
/// Tall: `(A^HA)⁻¹A^H`. Wide: `A^H(AA^H)⁻¹`. Square: `A⁻¹`. Full rank is
/// decided by the pivot test on the smaller Gram matrix with threshold
/// `rank_eps·‖A‖_F²`.
pub fn pinv_full_rank(a: &DenseMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    let (m, n) = a.shape();
    let a_h = a.conjugate_transpose();
    if m > n {
        let gram = a_h.matmul(a)?;
        let lu = gram_lu(&gram, a.frobenius_norm(), tol)?;
        lu.solve_with_threshold(&a_h, 0.0)
    } else if m < n {
        // A^H (AA^H)⁻¹ = ((AA^H)⁻¹ A)^H since the Gram matrix is Hermitian.
        let gram = a.matmul(&a_h)?;
        let lu = gram_lu(&gram, a.frobenius_norm(), tol)?;
        Ok(lu.solve_with_threshold(a, 0.0)?.conjugate_transpose())
    } else {
        LuFactorization::new(a)?.inverse(tol).map_err(|e| match e {
            Error::Singular { pivot, threshold } => Error::RankDeficient { pivot, threshold },
            e => e,
        })
    }
}

/// `(A∘Θ)^H(A∘Θ) = (A^HA) ∘ G` with `G = (1/m)·Θ^HΘ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramHadamard {
    /// `A^HA`
    pub gram: DenseMatrix,
    /// `m`
    pub scale: usize,
    /// Left Gram angle matrix `G`.
    pub angle_gram: AngleMatrix,
}

impl GramHadamard {
    /// Dense `(A^HA) ∘ G`.
    pub fn product(&self) -> DenseMatrix {
        self.gram
            .hadamard_product(&self.angle_gram.materialize())
            .expect("shapes agree by construction")
    }
}

pub fn gram_hadamard_factorization(a: &DenseMatrix, t: &AngleMatrix) -> Result<GramHadamard> {
    require_same_shape(a, t, "gram_hadamard_factorization")?;
    let gram = a.conjugate_transpose().matmul(a)?;
    let (scale, angle_gram) = t.gram(GramSide::Left);
    Ok(GramHadamard {
        gram,
        scale,
        angle_gram,
    })
}

/// `(A∘Θ)⁺ = A⁺∘Θ^H`; never forms `(A∘Θ)^H(A∘Θ)`.
pub fn pinv_structured(a: &DenseMatrix, t: &AngleMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    require_same_shape(a, t, "pinv_structured")?;
    t.mask_hermitian(&pinv_full_rank(a, tol)?)
}

fn require_same_shape(a: &DenseMatrix, t: &AngleMatrix, op: &'static str) -> Result<()> {
    if a.shape() != t.shape() {
        return Err(Error::DimensionMismatch {
            op,
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: t.rows(),
            right_cols: t.cols(),
        });
    }
    Ok(())
}
