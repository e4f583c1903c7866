//! Square-case structured formulas for `A∘Θ`:
//! `|A∘Θ| = |A|·e^{j(Σθ+Σφ)}`, `(A∘Θ)⁻¹ = A⁻¹∘Θ^H` and
//! `(A∘Θᵀ)⁻¹ = A⁻¹∘Θ*`, plus a cofactor (adjugate) oracle.
//!
//! Cofactors follow the adjugate-oriented convention
//! `A_{ij} = (−1)^{i+j}·|M_{a_{ji}}|`, where `M_{a_{ji}}` deletes row `j`
//! and column `i`. With this convention the cofactor grid *is* the
//! adjugate, and `A⁻¹ = (A_{ij}) / |A|` needs no transpose.

use num_complex::Complex64;

use crate::angle::{unit_phasor, AngleMatrix};
use crate::error::{Error, Result};
use crate::lu::{det_lu, LuFactorization};
use crate::matrix::DenseMatrix;
use crate::tolerance::ToleranceConfig;

/// Default size limit for [`inverse_adjugate_structured`].
pub const DEFAULT_ADJUGATE_CAP: usize = 6;

fn require_square_pair(a: &DenseMatrix, t: &AngleMatrix, op: &'static str) -> Result<usize> {
    let n = a.require_square(op)?;
    if t.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op,
            left_rows: n,
            left_cols: n,
            right_rows: t.rows(),
            right_cols: t.cols(),
        });
    }
    Ok(n)
}

/// `|A∘Θ| = |A|·e^{j·phase_sum(Θ)}`.
pub fn det_structured(a: &DenseMatrix, t: &AngleMatrix) -> Result<Complex64> {
    require_square_pair(a, t, "det_structured")?;
    Ok(det_lu(a)? * unit_phasor(t.phase_sum()?))
}

/// `(A∘Θ)⁻¹ = A⁻¹∘Θ^H`. Factors `A` once; the masked product is never formed.
pub fn inverse_structured(a: &DenseMatrix, t: &AngleMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    require_square_pair(a, t, "inverse_structured")?;
    let inv = LuFactorization::new(a)?.inverse(tol)?;
    t.mask_hermitian(&inv)
}

/// `(A∘Θᵀ)⁻¹ = A⁻¹∘Θ*`.
pub fn inverse_structured_transposed(
    a: &DenseMatrix,
    t: &AngleMatrix,
    tol: &ToleranceConfig,
) -> Result<DenseMatrix> {
    require_square_pair(a, t, "inverse_structured_transposed")?;
    let inv = LuFactorization::new(a)?.inverse(tol)?;
    // Θ* = (Θᵀ)^H, so reuse the Hermitian mask of the transpose.
    t.transpose().mask_hermitian(&inv)
}

/// `M_{a_{ij}}`: `source` with one row and one column removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Minor<'a> {
    source: &'a DenseMatrix,
    deleted_row: usize,
    deleted_col: usize,
}

impl<'a> Minor<'a> {
    pub fn new(source: &'a DenseMatrix, deleted_row: usize, deleted_col: usize) -> Result<Self> {
        let n = source.require_square("minor")?;
        if deleted_row >= n || deleted_col >= n {
            return Err(Error::IndexOutOfRange {
                row: deleted_row,
                col: deleted_col,
                rows: n,
                cols: n,
            });
        }
        Ok(Self {
            source,
            deleted_row,
            deleted_col,
        })
    }

    pub fn deleted_row(&self) -> usize {
        self.deleted_row
    }

    pub fn deleted_col(&self) -> usize {
        self.deleted_col
    }

    /// The (n−1)×(n−1) submatrix.
    pub fn matrix(&self) -> Result<DenseMatrix> {
        self.source.delete_row_col(self.deleted_row, self.deleted_col)
    }

    /// Minor determinant; the empty minor of a 1×1 matrix has determinant 1.
    pub fn det(&self) -> Result<Complex64> {
        if self.source.rows() == 1 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        det_lu(&self.matrix()?)
    }
}

/// Cofactor `A_{ij} = (−1)^{i+j}·|M_{a_{ji}}|` (row `j` and column `i` deleted).
pub fn cofactor(a: &DenseMatrix, i: usize, j: usize) -> Result<Complex64> {
    let n = a.require_square("cofactor")?;
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange {
            row: i,
            col: j,
            rows: n,
            cols: n,
        });
    }
    let sign = if (i + j).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(Minor::new(a, j, i)?.det()? * sign)
}

/// Grid of cofactors, which under the convention above equals `adj(A)`.
pub fn adjugate(a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.require_square("adjugate")?;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(cofactor(a, i, j)?);
        }
    }
    Ok(DenseMatrix::from_raw(n, n, data))
}

/// Entry `(i, j)` = `A_{ij}/|A| · e^{−j(θ_j+φ_i)}`.
///
/// Costs n² minor determinants, so it is limited to `n ≤ cap`. Serves as an
/// oracle for [`inverse_structured`] that never inverts `A` directly.
pub fn inverse_adjugate_structured(
    a: &DenseMatrix,
    t: &AngleMatrix,
    tol: &ToleranceConfig,
    cap: usize,
) -> Result<DenseMatrix> {
    let n = require_square_pair(a, t, "inverse_adjugate_structured")?;
    if n > cap {
        return Err(Error::AdjugateCap { n, cap });
    }
    let lu = LuFactorization::new(a)?;
    let threshold = lu.singular_threshold(tol);
    let pivot = lu.min_pivot();
    if pivot <= threshold {
        return Err(Error::Singular { pivot, threshold });
    }
    let det = lu.det();
    let adj = adjugate(a)?;
    let (theta, phi) = (t.theta(), t.phi());
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        adj.get(i, j) / det * unit_phasor(-(theta[j] + phi[i]))
    }))
}
