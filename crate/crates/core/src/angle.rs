//! Angle vectors and rank-one angle matrices `Θ = v·uᵀ` with
//! `v = (e^{jθ_i})`, `u = (e^{jφ_k})`.
//!
//! An [`AngleMatrix`] is kept as its two phase lists. Conjugation,
//! transposition and the Hermitian adjoint are phase negations and swaps;
//! the dense form is produced only by [`AngleMatrix::materialize`].
//! Phases are never wrapped into `[0, 2π)`, so two angle matrices are
//! compared through their materializations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::report::VerificationReport;
use crate::tolerance::ToleranceConfig;

/// Unit-modulus complex number `e^{j·phase}` evaluated as `(cos, sin)`.
#[inline]
pub fn unit_phasor(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

fn check_phases(phases: &[f64]) -> Result<()> {
    if phases.is_empty() {
        return Err(Error::EmptyAngleVector);
    }
    match phases.iter().position(|p| !p.is_finite()) {
        Some(index) => Err(Error::NonFinitePhase { index }),
        None => Ok(()),
    }
}

/// `v = (e^{jθ_i})`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector {
    phases: Vec<f64>,
}

impl AngleVector {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        check_phases(&phases)?;
        Ok(Self { phases })
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn materialize(&self) -> Vec<Complex64> {
        self.phases.iter().map(|&p| unit_phasor(p)).collect()
    }
}

/// Which Gram product of `Θ` to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramSide {
    /// `Θ^H·Θ` (n×n, scale m).
    Left,
    /// `Θ·Θ^H` (m×m, scale n).
    Right,
}

/// Rank-one angle matrix with entries `e^{j(θ_i + φ_k)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleMatrix {
    theta: Vec<f64>,
    phi: Vec<f64>,
}

impl AngleMatrix {
    /// `theta` has one phase per row, `phi` one per column.
    pub fn new(theta: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        check_phases(&theta)?;
        check_phases(&phi).map_err(|e| match e {
            Error::NonFinitePhase { index } => Error::NonFinitePhase {
                index: theta.len() + index,
            },
            e => e,
        })?;
        Ok(Self { theta, phi })
    }

    /// `Θ = v·uᵀ`.
    pub fn from_vectors(v: &AngleVector, u: &AngleVector) -> Self {
        Self {
            theta: v.phases.clone(),
            phi: u.phases.clone(),
        }
    }

    /// All-zero phases, i.e. the all-ones matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(vec![0.0; rows], vec![0.0; cols])
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn rows(&self) -> usize {
        self.theta.len()
    }

    pub fn cols(&self) -> usize {
        self.phi.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    /// `v`, the row-phase vector.
    pub fn row_vector(&self) -> AngleVector {
        AngleVector {
            phases: self.theta.clone(),
        }
    }

    /// `u`, the column-phase vector.
    pub fn col_vector(&self) -> AngleVector {
        AngleVector {
            phases: self.phi.clone(),
        }
    }

    /// Entry `(i, k)`: `e^{j(θ_i + φ_k)}`.
    #[inline]
    pub fn entry(&self, i: usize, k: usize) -> Complex64 {
        unit_phasor(self.theta[i] + self.phi[k])
    }

    /// Dense m×n matrix `(e^{j(θ_i+φ_k)})`.
    pub fn materialize(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.rows(), self.cols(), |i, k| self.entry(i, k))
    }

    /// `Θ^H` as an angle matrix: `θ' = −φ`, `φ' = −θ`.
    ///
    /// Since negation is exact, its materialization is bit-identical to the
    /// conjugate transpose of `materialize()`.
    pub fn hermitian(&self) -> Self {
        Self {
            theta: self.phi.iter().map(|p| -p).collect(),
            phi: self.theta.iter().map(|p| -p).collect(),
        }
    }

    /// `Θᵀ`: the phase lists swap roles.
    pub fn transpose(&self) -> Self {
        Self {
            theta: self.phi.clone(),
            phi: self.theta.clone(),
        }
    }

    /// `Θ*`: all phases negated.
    pub fn conjugate(&self) -> Self {
        Self {
            theta: self.theta.iter().map(|p| -p).collect(),
            phi: self.phi.iter().map(|p| -p).collect(),
        }
    }

    /// `Θ^{∘(−T)}` computed literally: entrywise reciprocal of the dense
    /// matrix, then transposed. Agrees with `hermitian().materialize()`.
    pub fn hadamard_inverse_transpose(&self) -> DenseMatrix {
        let dense = self.materialize();
        let recip = DenseMatrix::from_raw(
            dense.rows(),
            dense.cols(),
            dense.data().iter().map(|z| z.inv()).collect(),
        );
        recip.transpose()
    }

    /// Gram product as `scale · G` with `G` an angle matrix.
    ///
    /// `Θ^H·Θ = m·G` with `G_{kl} = e^{j(φ_l − φ_k)}`, and
    /// `Θ·Θ^H = n·G'` with `G'_{il} = e^{j(θ_i − θ_l)}`.
    pub fn gram(&self, side: GramSide) -> (usize, AngleMatrix) {
        match side {
            GramSide::Left => (
                self.rows(),
                Self {
                    theta: self.phi.iter().map(|p| -p).collect(),
                    phi: self.phi.clone(),
                },
            ),
            GramSide::Right => (
                self.cols(),
                Self {
                    theta: self.theta.clone(),
                    phi: self.theta.iter().map(|p| -p).collect(),
                },
            ),
        }
    }

    /// `Σθ_i + Σφ_i` for a square angle matrix; `|A∘Θ| = |A|·e^{j·phase_sum}`.
    pub fn phase_sum(&self) -> Result<f64> {
        if self.rows() != self.cols() {
            return Err(Error::NotSquare {
                op: "phase_sum",
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        Ok(self.theta.iter().sum::<f64>() + self.phi.iter().sum::<f64>())
    }

    /// Dense check of `Θ^H Θ Θ^H = mn·Θ^H`.
    ///
    /// Reports the largest entry deviation; passes when it is at most
    /// `m·n·entry_eps`.
    pub fn triple_product_check(&self, tol: &ToleranceConfig) -> VerificationReport {
        let (m, n) = self.shape();
        let dense = self.materialize();
        let dense_h = dense.conjugate_transpose();
        let triple = dense_h
            .matmul(&dense)
            .and_then(|g| g.matmul(&dense_h))
            .expect("conformable by construction");
        let mn = (m * n) as f64;
        let expect = self.hermitian().materialize().scale(Complex64::new(mn, 0.0));
        let deviation = triple.max_abs_diff(&expect).expect("same shape");
        let mut report = VerificationReport::new();
        report.push("triple_product", deviation, mn * tol.entry_eps);
        report
    }

    fn require_adjoint_shape(&self, x: &DenseMatrix, op: &'static str) -> Result<()> {
        if x.shape() != (self.cols(), self.rows()) {
            return Err(Error::DimensionMismatch {
                op,
                left_rows: x.rows(),
                left_cols: x.cols(),
                right_rows: self.cols(),
                right_cols: self.rows(),
            });
        }
        Ok(())
    }

    /// `X ∘ Θ^H` for an n×m `X`, with each factor `e^{−j(θ_k+φ_i)}`
    /// evaluated from the negated phase sum.
    pub fn mask_hermitian(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        self.require_adjoint_shape(x, "mask_hermitian")?;
        let m = self.rows();
        let data = x
            .data()
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let (i, k) = (idx / m, idx % m);
                a * unit_phasor(-self.phi[i] - self.theta[k])
            })
            .collect();
        Ok(DenseMatrix::from_raw(x.rows(), x.cols(), data))
    }

    /// `X ∘ Θ^H` computed as `diag(u*)·X·diag(v*)`: m + n trigonometric
    /// evaluations and 2mn complex multiplications.
    pub fn mask_hermitian_factored(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        self.require_adjoint_shape(x, "mask_hermitian_factored")?;
        let left: Vec<Complex64> = self.phi.iter().map(|&p| unit_phasor(-p)).collect();
        let right: Vec<Complex64> = self.theta.iter().map(|&p| unit_phasor(-p)).collect();
        let m = self.rows();
        let mut data = Vec::with_capacity(x.data().len());
        for (i, &l) in left.iter().enumerate() {
            let row = &x.data()[i * m..(i + 1) * m];
            data.extend(row.iter().zip(&right).map(|(&a, &r)| l * a * r));
        }
        Ok(DenseMatrix::from_raw(x.rows(), x.cols(), data))
    }

    /// Largest entrywise deviation between two materializations.
    pub fn max_deviation(&self, other: &AngleMatrix) -> Result<f64> {
        self.materialize().max_abs_diff(&other.materialize())
    }
}
