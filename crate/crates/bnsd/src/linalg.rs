//! Dense complex matrices for small quantum operators.
//!
//! Everything in this crate lives in dimension 2, 4 or 8 (one, two or three
//! qubits), so matrices are stored as plain row-major `Vec<Complex64>` and
//! all algorithms are direct. Hermitian eigenvalues come from a cyclic Jacobi
//! iteration on the real symmetric embedding `[[Re, -Im], [Im, Re]]`, which
//! reaches machine precision for these sizes.

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate (64-bit real and imaginary parts).
pub type ComplexScalar = Complex64;

/// Default absolute tolerance for elementwise comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Matrix dimensions supported by this crate: one, two or three qubits.
pub const SUPPORTED_DIMS: [usize; 3] = [2, 4, 8];

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("unsupported matrix dimension {dim}; expected one of 2, 4, 8")]
    UnsupportedDim { dim: usize },
    #[error("entry count {len} does not match a {dim}x{dim} matrix")]
    EntryCount { dim: usize, len: usize },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("Kronecker product dimension {dim} exceeds the supported sizes")]
    KronOverflow { dim: usize },
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {deviation:e}")]
    NotHermitian { deviation: f64 },
}

/// A dense, row-major complex square matrix of dimension 2, 4 or 8.
///
/// Stored entries are always finite; the checked constructors reject NaN and
/// infinity up front so downstream arithmetic never has to test for them.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating the dimension,
    /// the entry count and finiteness of every entry.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if !SUPPORTED_DIMS.contains(&dim) {
            return Err(LinalgError::UnsupportedDim { dim });
        }
        if entries.len() != dim * dim {
            return Err(LinalgError::EntryCount { dim, len: entries.len() });
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { row: k / dim, col: k % dim });
            }
        }
        Ok(Self { dim, entries })
    }

    /// Internal constructor for values produced by our own arithmetic.
    fn from_parts(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert!(SUPPORTED_DIMS.contains(&dim));
        debug_assert_eq!(entries.len(), dim * dim);
        debug_assert!(entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        Self { dim, entries }
    }

    /// The zero matrix.
    pub fn zeros(dim: usize) -> Result<Self, LinalgError> {
        if !SUPPORTED_DIMS.contains(&dim) {
            return Err(LinalgError::UnsupportedDim { dim });
        }
        Ok(Self::from_parts(dim, vec![Complex64::new(0.0, 0.0); dim * dim]))
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// A diagonal matrix from the given diagonal entries.
    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(diag.len())?;
        for (i, z) in diag.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { row: i, col: i });
            }
            m.entries[i * diag.len() + i] = *z;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major slice of all entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry at `(row, col)`. Panics when out of bounds, like slice indexing.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.dim && col < self.dim, "index ({row}, {col}) out of bounds");
        self.entries[row * self.dim + col]
    }

    /// Kronecker product `self (x) other`. The result dimension must again be
    /// one of the supported sizes, so three-qubit operators (8x8) are the
    /// largest expressible product.
    pub fn kron(&self, other: &Self) -> Result<Self, LinalgError> {
        let dim = self.dim * other.dim;
        if !SUPPORTED_DIMS.contains(&dim) {
            return Err(LinalgError::KronOverflow { dim });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.entries[i * self.dim + j];
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        let row = i * other.dim + k;
                        let col = j * other.dim + l;
                        entries[row * dim + col] = a * other.entries[k * other.dim + l];
                    }
                }
            }
        }
        Ok(Self::from_parts(dim, entries))
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(Self::from_parts(n, entries))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        Self::from_parts(n, entries)
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Elementwise sum.
    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimMismatch { left: self.dim, right: other.dim });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_parts(self.dim, entries))
    }

    /// Elementwise difference.
    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimMismatch { left: self.dim, right: other.dim });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_parts(self.dim, entries))
    }

    /// Scalar multiple `k * self`. The scalar must be finite.
    pub fn scale(&self, k: Complex64) -> Self {
        assert!(k.re.is_finite() && k.im.is_finite(), "scale factor must be finite");
        Self::from_parts(self.dim, self.entries.iter().map(|z| z * k).collect())
    }

    /// Largest elementwise absolute difference, `max_ij |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimMismatch { left: self.dim, right: other.dim });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest deviation from Hermitian symmetry, `max_ij |a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.entries[i * n + j] - self.entries[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Whether the matrix equals its own adjoint within `tol` (absolute,
    /// elementwise).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// All eigenvalues of the Hermitian part `(A + A^dagger)/2`, ascending.
    ///
    /// Rejects matrices whose Hermitian deviation exceeds `tol`.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>, LinalgError> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            return Err(LinalgError::NotHermitian { deviation });
        }
        let n = self.dim;
        // Real symmetric embedding of the Hermitian part: H = R + iJ maps to
        // [[R, -J], [J, R]], whose spectrum is that of H with every
        // eigenvalue doubled.
        let m = 2 * n;
        let mut s = vec![0.0f64; m * m];
        for i in 0..n {
            for j in 0..n {
                let h = 0.5 * (self.entries[i * n + j] + self.entries[j * n + i].conj());
                s[i * m + j] = h.re;
                s[(i + n) * m + (j + n)] = h.re;
                s[i * m + (j + n)] = -h.im;
                s[(i + n) * m + j] = h.im;
            }
        }
        let mut eigs = jacobi_symmetric_eigenvalues(&mut s, m);
        eigs.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        // Each eigenvalue appears twice in the embedding; keep every other one.
        Ok(eigs.into_iter().step_by(2).collect())
    }

    /// Smallest eigenvalue of the Hermitian part, using the default
    /// Hermitian-deviation tolerance.
    pub fn min_eigenvalue(&self) -> Result<f64, LinalgError> {
        self.min_eigenvalue_with_tol(DEFAULT_TOL)
    }

    /// Smallest eigenvalue of the Hermitian part; rejects matrices whose
    /// Hermitian deviation exceeds `tol`.
    pub fn min_eigenvalue_with_tol(&self, tol: f64) -> Result<f64, LinalgError> {
        Ok(self.hermitian_eigenvalues(tol)?[0])
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        assert!(row < self.dim && col < self.dim, "index ({row}, {col}) out of bounds");
        &self.entries[row * self.dim + col]
    }
}

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    ComplexMatrix::from_parts(2, vec![o, l, l, o])
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_parts(2, vec![o, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), o])
}

/// Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    ComplexMatrix::from_parts(2, vec![l, o, o, -l])
}

/// Cyclic Jacobi eigenvalue iteration for a dense real symmetric matrix,
/// stored row-major in `s`. Returns the eigenvalues in arbitrary order.
fn jacobi_symmetric_eigenvalues(s: &mut [f64], n: usize) -> Vec<f64> {
    let scale: f64 = s.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let off = |s: &[f64]| -> f64 {
        let mut sum = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                sum += 2.0 * s[p * n + q] * s[p * n + q];
            }
        }
        sum.sqrt()
    };
    for _sweep in 0..60 {
        if off(s) <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = s[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (s[q * n + q] - s[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let skp = s[k * n + p];
                    let skq = s[k * n + q];
                    s[k * n + p] = c * skp - sn * skq;
                    s[k * n + q] = sn * skp + c * skq;
                }
                for k in 0..n {
                    let spk = s[p * n + k];
                    let sqk = s[q * n + k];
                    s[p * n + k] = c * spk - sn * sqk;
                    s[q * n + k] = sn * spk + c * sqk;
                }
            }
        }
    }
    (0..n).map(|i| s[i * n + i]).collect()
}
