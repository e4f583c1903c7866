//! Dense complex matrices with the entrywise (Hadamard) algebra.
//!
//! Storage is row-major with explicit dimensions. Every constructor that
//! accepts caller data rejects non-finite entries; arithmetic never
//! broadcasts, so shapes must agree exactly.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Base scalar field: a pair of `f64` (real, imaginary).
pub type ComplexScalar = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(m * n);
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::DataLength {
                    rows: m,
                    cols: n,
                    len: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(m, n, data)
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    /// Internal constructor for results of arithmetic on validated inputs.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for k in 0..cols {
                data.push(f(i, k));
            }
        }
        Self::from_raw(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::from_vec(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn all_ones(rows: usize, cols: usize) -> Result<Self> {
        Self::from_vec(rows, cols, vec![Complex64::new(1.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    /// Entry at `(i, k)`. Panics when out of range.
    #[inline]
    pub fn get(&self, i: usize, k: usize) -> Complex64 {
        assert!(i < self.rows && k < self.cols, "index ({i}, {k}) out of range");
        self.data[i * self.cols + k]
    }

    pub fn try_get(&self, i: usize, k: usize) -> Result<Complex64> {
        if i < self.rows && k < self.cols {
            Ok(self.data[i * self.cols + k])
        } else {
            Err(Error::IndexOutOfRange {
                row: i,
                col: k,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn require_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(self.mismatch(other, op));
        }
        Ok(())
    }

    pub(crate) fn mismatch(&self, other: &Self, op: &'static str) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Entrywise product `(A∘B)_{ik} = a_{ik} b_{ik}`.
    pub fn hadamard_product(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "hadamard_product")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self::from_raw(self.rows, self.cols, data))
    }

    /// Entrywise integer power.
    ///
    /// `k = 0` yields the all-ones matrix even where entries vanish
    /// (elementwise `0^0 = 1`). Negative `k` requires every entry to have
    /// modulus above `entry_eps`.
    pub fn hadamard_power(&self, k: i32, entry_eps: f64) -> Result<Self> {
        if k == 0 {
            return Self::all_ones(self.rows, self.cols);
        }
        if k < 0 {
            self.first_zero(entry_eps)?;
            let inv = self.data.iter().map(|a| a.inv());
            let data = inv.map(|a| a.powu(k.unsigned_abs())).collect();
            return Ok(Self::from_raw(self.rows, self.cols, data));
        }
        let data = self.data.iter().map(|a| a.powu(k as u32)).collect();
        Ok(Self::from_raw(self.rows, self.cols, data))
    }

    /// Entrywise reciprocal `A^{∘(−1)}`.
    pub fn hadamard_inverse(&self, entry_eps: f64) -> Result<Self> {
        self.first_zero(entry_eps)?;
        let data = self.data.iter().map(|a| a.inv()).collect();
        Ok(Self::from_raw(self.rows, self.cols, data))
    }

    fn first_zero(&self, entry_eps: f64) -> Result<()> {
        match self.data.iter().position(|a| a.norm() <= entry_eps) {
            Some(pos) => Err(Error::ZeroEntry {
                row: pos / self.cols,
                col: pos % self.cols,
            }),
            None => Ok(()),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch(other, "matmul"));
        }
        let (m, p, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); m * n];
        for i in 0..m {
            let out_row = &mut out[i * n..(i + 1) * n];
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(l)) {
                    *o += a * b;
                }
            }
        }
        debug_assert_eq!(p, other.rows);
        Ok(Self::from_raw(m, n, out))
    }

    /// Entrywise complex conjugate `A*`.
    pub fn conjugate(&self) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|a| a.conj()).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, k| self.data[k * self.cols + i])
    }

    /// `A^H`, computed as the conjugate of the transpose.
    pub fn conjugate_transpose(&self) -> Self {
        self.transpose().conjugate()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|a| a * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self::from_raw(self.rows, self.cols, data))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self::from_raw(self.rows, self.cols, data))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation `max |a_{ik} − b_{ik}|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.require_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `‖A − B‖_F`.
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        self.require_same_shape(other, "frobenius_distance")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// `‖A − I‖_F` for square `A`.
    pub fn identity_residual(&self) -> Result<f64> {
        let n = self.require_square("identity_residual")?;
        let mut acc = 0.0;
        for i in 0..n {
            for k in 0..n {
                let target = if i == k { 1.0 } else { 0.0 };
                acc += (self.data[i * n + k] - target).norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }

    /// Copy with row `row` and column `col` removed.
    pub fn delete_row_col(&self, row: usize, col: usize) -> Result<Self> {
        self.try_get(row, col)?;
        if self.rows == 1 || self.cols == 1 {
            return Err(Error::EmptyMatrix {
                rows: self.rows - 1,
                cols: self.cols - 1,
            });
        }
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for k in (0..self.cols).filter(|&k| k != col) {
                data.push(self.data[i * self.cols + k]);
            }
        }
        Ok(Self::from_raw(self.rows - 1, self.cols - 1, data))
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{z}")).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
