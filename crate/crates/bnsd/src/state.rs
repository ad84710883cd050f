//! W-state amplitudes and validated density matrices.
//!
//! Basis ordering puts qubit A in the most significant bit: `|abc>` maps to
//! index `4a + 2b + c`. A W-class state `a1|001> + a2|010> + a4|100>`
//! therefore populates exactly the rows and columns {1, 2, 4} of its 8x8
//! density matrix; the amplitude subscripts are those basis-state indices.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};

/// Absolute tolerance on `|a1|^2 + |a2|^2 + |a4|^2 - 1` accepted by
/// [`WAmplitudes::new`].
pub const NORM_TOL: f64 = 1e-12;

/// Most negative eigenvalue tolerated by the default density-matrix
/// validation.
pub const POSITIVITY_FLOOR: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("amplitudes are not normalized: |a1|^2 + |a2|^2 + |a4|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("amplitudes must be finite")]
    NonFiniteAmplitude,
    #[error("cannot normalize amplitudes with zero norm")]
    ZeroNorm,
    #[error("state vector must have 4 or 8 entries, got {len}")]
    VectorLength { len: usize },
    #[error("state vector is not unit norm: |v| = {norm}")]
    VectorNotUnit { norm: f64 },
    #[error("density matrix is not Hermitian: max |a_ij - conj(a_ji)| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("density matrix trace deviates from 1 by {deviation:e}")]
    TraceNotOne { deviation: f64 },
    #[error("density matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Amplitudes of a W-class state `a1|001> + a2|010> + a4|100>`.
///
/// Construction enforces normalization, so every value of this type is a
/// valid pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WAmplitudes {
    a1: Complex64,
    a2: Complex64,
    a4: Complex64,
}

impl WAmplitudes {
    /// Accepts amplitudes whose squared norm is within [`NORM_TOL`] of 1.
    pub fn new(a1: Complex64, a2: Complex64, a4: Complex64) -> Result<Self, StateError> {
        for z in [a1, a2, a4] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(StateError::NonFiniteAmplitude);
            }
        }
        let norm_sqr = a1.norm_sqr() + a2.norm_sqr() + a4.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(StateError::NotNormalized { norm_sqr });
        }
        Ok(Self { a1, a2, a4 })
    }

    /// Rescales arbitrary finite amplitudes to unit norm.
    pub fn normalized(a1: Complex64, a2: Complex64, a4: Complex64) -> Result<Self, StateError> {
        for z in [a1, a2, a4] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(StateError::NonFiniteAmplitude);
            }
        }
        let norm_sqr = a1.norm_sqr() + a2.norm_sqr() + a4.norm_sqr();
        if !norm_sqr.is_finite() {
            return Err(StateError::NonFiniteAmplitude);
        }
        if norm_sqr <= f64::MIN_POSITIVE {
            return Err(StateError::ZeroNorm);
        }
        let norm = norm_sqr.sqrt();
        Self::new(a1 / norm, a2 / norm, a4 / norm)
    }

    /// The standard W state: all three amplitudes equal to `1/sqrt(3)`.
    pub fn standard_w() -> Self {
        let r = Complex64::new(3.0_f64.sqrt().recip(), 0.0);
        Self::new(r, r, r).expect("1/sqrt(3) amplitudes are normalized")
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    pub fn a2(&self) -> Complex64 {
        self.a2
    }

    pub fn a4(&self) -> Complex64 {
        self.a4
    }

    /// `|a1|^2 + |a2|^2 + |a4|^2` (1 up to [`NORM_TOL`] by construction).
    pub fn norm_sqr(&self) -> f64 {
        self.a1.norm_sqr() + self.a2.norm_sqr() + self.a4.norm_sqr()
    }

    /// Embedding into the three-qubit computational basis: the length-8
    /// vector with `a1`, `a2`, `a4` at indices 1, 2 and 4.
    pub fn to_state_vector(&self) -> [Complex64; 8] {
        let mut v = [Complex64::new(0.0, 0.0); 8];
        v[1] = self.a1;
        v[2] = self.a2;
        v[4] = self.a4;
        v
    }
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (each within the tolerances used at construction).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates with the default tolerances: Hermiticity and trace within
    /// `1e-12`, minimum eigenvalue no lower than `-1e-10`.
    pub fn new(mat: ComplexMatrix) -> Result<Self, StateError> {
        validate_parts(mat, crate::linalg::DEFAULT_TOL, crate::linalg::DEFAULT_TOL, POSITIVITY_FLOOR)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }
}

/// Checks the three density-matrix invariants and wraps the matrix on
/// success. The checks run in a fixed order so each failure mode surfaces as
/// its own error: Hermiticity first, then trace, then positivity.
pub fn validate_density(mat: ComplexMatrix, tol: f64) -> Result<DensityMatrix, StateError> {
    validate_parts(mat, tol, tol, tol)
}

fn validate_parts(
    mat: ComplexMatrix,
    hermitian_tol: f64,
    trace_tol: f64,
    positivity_floor: f64,
) -> Result<DensityMatrix, StateError> {
    let deviation = mat.hermitian_deviation();
    if deviation > hermitian_tol {
        return Err(StateError::NotHermitian { deviation });
    }
    let tr = mat.trace();
    let trace_deviation = (tr - Complex64::new(1.0, 0.0)).norm();
    if trace_deviation > trace_tol {
        return Err(StateError::TraceNotOne { deviation: trace_deviation });
    }
    let min_eigenvalue = mat.min_eigenvalue_with_tol(hermitian_tol.max(crate::linalg::DEFAULT_TOL))?;
    if min_eigenvalue < -positivity_floor {
        return Err(StateError::NotPositive { min_eigenvalue });
    }
    Ok(DensityMatrix { mat })
}

/// Density matrix of a W-class pure state.
///
/// Every entry is the product `v_i * conj(v_j)` of the embedded state
/// vector, so the result is bit-for-bit identical to
/// `pure_state_density(&amps.to_state_vector())`.
pub fn w_state_density(amps: &WAmplitudes) -> DensityMatrix {
    let v = amps.to_state_vector();
    let mut entries = vec![Complex64::new(0.0, 0.0); 64];
    for i in [1usize, 2, 4] {
        for j in [1usize, 2, 4] {
            entries[i * 8 + j] = v[i] * v[j].conj();
        }
    }
    let mat = ComplexMatrix::new(8, entries).expect("finite amplitudes give a finite matrix");
    DensityMatrix::new(mat).expect("outer product of a normalized vector is a density matrix")
}

/// Density matrix `v * v^dagger` of a pure state given as a basis-amplitude
/// vector of length 4 (two qubits) or 8 (three qubits).
pub fn pure_state_density(vec: &[Complex64]) -> Result<DensityMatrix, StateError> {
    let dim = vec.len();
    if dim != 4 && dim != 8 {
        return Err(StateError::VectorLength { len: dim });
    }
    for z in vec {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(StateError::NonFiniteAmplitude);
        }
    }
    let norm = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(StateError::VectorNotUnit { norm });
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            entries[i * dim + j] = vec[i] * vec[j].conj();
        }
    }
    DensityMatrix::new(ComplexMatrix::new(dim, entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli_x, ComplexMatrix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_unnormalized_amplitudes() {
        let err = WAmplitudes::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, StateError::NotNormalized { .. }));
    }

    #[test]
    fn rejects_non_finite_amplitudes() {
        let err = WAmplitudes::new(c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, StateError::NonFiniteAmplitude));
    }

    #[test]
    fn normalized_rescales_and_rejects_zero() {
        let amps = WAmplitudes::normalized(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(amps.a1(), c(1.0, 0.0));
        let err = WAmplitudes::normalized(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, StateError::ZeroNorm));
    }

    #[test]
    fn standard_w_is_normalized() {
        let amps = WAmplitudes::standard_w();
        assert!((amps.norm_sqr() - 1.0).abs() <= NORM_TOL);
        assert_eq!(amps.a1(), amps.a2());
        assert_eq!(amps.a2(), amps.a4());
    }

    #[test]
    fn basis_state_density_has_single_diagonal_entry() {
        let amps = WAmplitudes::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let rho = w_state_density(&amps);
        for i in 0..8 {
            for j in 0..8 {
                let want = if (i, j) == (1, 1) { c(1.0, 0.0) } else { c(0.0, 0.0) };
                assert_eq!(rho.matrix().get(i, j), want);
            }
        }
    }

    #[test]
    fn standard_w_density_fills_the_124_block() {
        let rho = w_state_density(&WAmplitudes::standard_w());
        let third = 1.0 / 3.0;
        for i in [1usize, 2, 4] {
            for j in [1usize, 2, 4] {
                let z = rho.matrix().get(i, j);
                assert!((z.re - third).abs() < 1e-15 && z.im.abs() < 1e-15);
            }
        }
        // Everything outside the {1, 2, 4} block is exactly zero.
        for i in 0..8 {
            for j in 0..8 {
                if ![1, 2, 4].contains(&i) || ![1, 2, 4].contains(&j) {
                    assert_eq!(rho.matrix().get(i, j), c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn complex_amplitudes_give_conjugate_coherences() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let amps = WAmplitudes::new(c(0.0, r), c(r, 0.0), c(0.0, 0.0)).unwrap();
        let rho = w_state_density(&amps);
        let e12 = rho.matrix().get(1, 2);
        let e21 = rho.matrix().get(2, 1);
        assert!((e12 - c(0.0, 0.5)).norm() < 1e-15);
        assert!((e21 - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn w_density_matches_pure_state_density_exactly() {
        let amps = WAmplitudes::normalized(c(0.3, 0.4), c(-0.5, 0.1), c(0.2, -0.6)).unwrap();
        let direct = w_state_density(&amps);
        let via_vector = pure_state_density(&amps.to_state_vector()).unwrap();
        assert_eq!(direct.matrix(), via_vector.matrix());
    }

    #[test]
    fn standard_w_density_is_a_projector() {
        // Brute-force rank-1 check: rho^2 = rho and trace 1 mean the
        // spectrum is {1, 0, ..., 0}, so the smallest eigenvalue is 0.
        let rho = w_state_density(&WAmplitudes::standard_w());
        let sq = rho.matrix().matmul(rho.matrix()).unwrap();
        assert!(sq.max_abs_diff(rho.matrix()).unwrap() < 1e-15);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(rho.matrix().min_eigenvalue().unwrap().abs() < 1e-9);
    }

    #[test]
    fn pure_state_density_accepts_two_qubit_vectors() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = [c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)];
        let rho = pure_state_density(&singlet).unwrap();
        assert_eq!(rho.dim(), 4);
        assert!((rho.matrix().get(1, 2) - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pure_state_density_rejects_bad_input() {
        assert!(matches!(
            pure_state_density(&[c(1.0, 0.0); 3]),
            Err(StateError::VectorLength { len: 3 })
        ));
        assert!(matches!(
            pure_state_density(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            Err(StateError::VectorNotUnit { .. })
        ));
    }

    #[test]
    fn validate_density_accepts_maximally_mixed() {
        let eighth = c(0.125, 0.0);
        let mat = ComplexMatrix::from_diagonal(&[eighth; 8]).unwrap();
        assert!(validate_density(mat, 1e-12).is_ok());
    }

    #[test]
    fn validate_density_reports_distinct_failures() {
        // Not Hermitian: an upper-triangular perturbation.
        let mut entries = vec![c(0.0, 0.0); 64];
        for i in 0..8 {
            entries[i * 8 + i] = c(0.125, 0.0);
        }
        entries[3] = c(0.1, 0.0);
        let mat = ComplexMatrix::new(8, entries).unwrap();
        assert!(matches!(validate_density(mat, 1e-12), Err(StateError::NotHermitian { .. })));

        // Hermitian but traceless: a Pauli embedding.
        let x_on_a = pauli_x()
            .kron(&ComplexMatrix::identity(2).unwrap())
            .unwrap()
            .kron(&ComplexMatrix::identity(2).unwrap())
            .unwrap();
        assert!(matches!(
            validate_density(x_on_a, 1e-12),
            Err(StateError::TraceNotOne { .. })
        ));

        // Hermitian with unit trace but an eigenvalue of -1.
        let mut diag = vec![c(0.0, 0.0); 8];
        diag[0] = c(2.0, 0.0);
        diag[1] = c(-1.0, 0.0);
        let mat = ComplexMatrix::from_diagonal(&diag).unwrap();
        assert!(matches!(
            validate_density(mat, 1e-12),
            Err(StateError::NotPositive { .. })
        ));
    }
}
