//! LU factorization with partial pivoting; the naive oracle behind `det_lu`
//! and `inverse_lu`.

use std::cell::Cell;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::tolerance::ToleranceConfig;

thread_local! {
    static FACTORIZATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Number of LU factorizations performed on the calling thread so far.
///
/// Used as an operation-count probe: structured routines are checked to
/// factor only the base matrix, and phase updates not at all.
pub fn factorization_count() -> u64 {
    FACTORIZATIONS.with(Cell::get)
}

/// `P·A = L·U` with `L` unit lower triangular, stored packed.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    n: usize,
    /// Packed factors: strict lower part is `L`, upper part including the
    /// diagonal is `U`.
    lu: Vec<Complex64>,
    /// `perm[i]` is the row of `A` that ended up in row `i`.
    perm: Vec<usize>,
    parity: f64,
    source_norm: f64,
}

impl LuFactorization {
    /// Factors a square matrix. Pivoting picks the largest modulus in the
    /// column; ties go to the lowest row index. Singular input is not an
    /// error here; it surfaces when inverting or solving.
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        let n = a.require_square("lu_factorize")?;
        FACTORIZATIONS.with(|c| c.set(c.get() + 1));

        let mut lu = a.data().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut parity = 1.0;

        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for col in 0..n {
                    lu.swap(k * n + col, p * n + col);
                }
                perm.swap(k, p);
                parity = -parity;
            }
            let pivot = lu[k * n + k];
            if best == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (upper, lower) = lu.split_at_mut(i * n);
                let pivot_row = &upper[k * n + k + 1..k * n + n];
                for (x, &u) in lower[k + 1..n].iter_mut().zip(pivot_row) {
                    *x -= factor * u;
                }
            }
        }

        Ok(Self {
            n,
            lu,
            perm,
            parity,
            source_norm: a.frobenius_norm(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// +1 or −1 according to the number of row swaps.
    pub fn parity(&self) -> f64 {
        self.parity
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Frobenius norm of the factored matrix.
    pub fn source_norm(&self) -> f64 {
        self.source_norm
    }

    pub fn lower(&self) -> DenseMatrix {
        let n = self.n;
        DenseMatrix::from_fn(n, n, |i, k| match i.cmp(&k) {
            std::cmp::Ordering::Greater => self.lu[i * n + k],
            std::cmp::Ordering::Equal => Complex64::new(1.0, 0.0),
            std::cmp::Ordering::Less => Complex64::new(0.0, 0.0),
        })
    }

    pub fn upper(&self) -> DenseMatrix {
        let n = self.n;
        DenseMatrix::from_fn(n, n, |i, k| {
            if i <= k {
                self.lu[i * n + k]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `P·A` for the permutation chosen during factorization.
    pub fn permute_rows(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        if a.rows() != self.n {
            return Err(Error::DimensionMismatch {
                op: "permute_rows",
                left_rows: self.n,
                left_cols: self.n,
                right_rows: a.rows(),
                right_cols: a.cols(),
            });
        }
        Ok(DenseMatrix::from_fn(self.n, a.cols(), |i, k| a.get(self.perm[i], k)))
    }

    /// `parity · ∏ u_ii`.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        (0..n).fold(Complex64::new(self.parity, 0.0), |acc, i| acc * self.lu[i * n + i])
    }

    /// Smallest pivot modulus `min |u_ii|`.
    pub fn min_pivot(&self) -> f64 {
        let n = self.n;
        (0..n).map(|i| self.lu[i * n + i].norm()).fold(f64::INFINITY, f64::min)
    }

    /// Singular-pivot threshold `rank_eps · ‖A‖_F`.
    pub fn singular_threshold(&self, tol: &ToleranceConfig) -> f64 {
        tol.rank_eps * self.source_norm
    }

    fn check_pivots(&self, threshold: f64) -> Result<()> {
        let pivot = self.min_pivot();
        if pivot <= threshold {
            Err(Error::Singular { pivot, threshold })
        } else {
            Ok(())
        }
    }

    /// Solves `A·X = B` with the singularity test `|u_ii| ≤ rank_eps·‖A‖_F`.
    pub fn solve(&self, b: &DenseMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
        self.solve_with_threshold(b, self.singular_threshold(tol))
    }

    /// Solves `A·X = B`, rejecting pivots at or below `threshold`.
    pub fn solve_with_threshold(&self, b: &DenseMatrix, threshold: f64) -> Result<DenseMatrix> {
        let n = self.n;
        if b.rows() != n {
            return Err(Error::DimensionMismatch {
                op: "lu_solve",
                left_rows: n,
                left_cols: n,
                right_rows: b.rows(),
                right_cols: b.cols(),
            });
        }
        self.check_pivots(threshold)?;
        let r = b.cols();
        // Work on P·B, row-major, and sweep all right-hand sides together.
        let mut x: Vec<Complex64> = Vec::with_capacity(n * r);
        for &p in &self.perm {
            x.extend_from_slice(b.row(p));
        }
        for i in 0..n {
            let (done, rest) = x.split_at_mut(i * r);
            let xi = &mut rest[..r];
            for l in 0..i {
                let f = self.lu[i * n + l];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (t, &s) in xi.iter_mut().zip(&done[l * r..(l + 1) * r]) {
                    *t -= f * s;
                }
            }
        }
        for i in (0..n).rev() {
            let (head, tail) = x.split_at_mut((i + 1) * r);
            let xi = &mut head[i * r..];
            for l in i + 1..n {
                let f = self.lu[i * n + l];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let off = (l - i - 1) * r;
                for (t, &s) in xi.iter_mut().zip(&tail[off..off + r]) {
                    *t -= f * s;
                }
            }
            let d = self.lu[i * n + i];
            for t in xi.iter_mut() {
                *t /= d;
            }
        }
        Ok(DenseMatrix::from_raw(n, r, x))
    }

    /// `A⁻¹` by column-wise back-substitution against the identity.
    pub fn inverse(&self, tol: &ToleranceConfig) -> Result<DenseMatrix> {
        self.inverse_with_threshold(self.singular_threshold(tol))
    }

    pub fn inverse_with_threshold(&self, threshold: f64) -> Result<DenseMatrix> {
        let eye = DenseMatrix::identity(self.n)?;
        self.solve_with_threshold(&eye, threshold)
    }
}

/// Determinant through LU.
pub fn det_lu(a: &DenseMatrix) -> Result<Complex64> {
    Ok(LuFactorization::new(a)?.det())
}

/// Inverse through LU with the pivot singularity test.
pub fn inverse_lu(a: &DenseMatrix, tol: &ToleranceConfig) -> Result<DenseMatrix> {
    LuFactorization::new(a)?.inverse(tol)
}

/// Condition proxy `‖A‖_F · ‖A⁻¹‖_F`; infinite when `A` is singular.
pub fn condition_proxy(a: &DenseMatrix, tol: &ToleranceConfig) -> Result<f64> {
    match inverse_lu(a, tol) {
        Ok(inv) => Ok(a.frobenius_norm() * inv.frobenius_norm()),
        Err(Error::Singular { .. }) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}
