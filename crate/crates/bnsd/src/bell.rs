//! Bell operators for two and three qubits.
//!
//! Each party K measures one of two observables obtained by rigidly rotating
//! the reference pair `(sigma_z, sigma_x)`:
//!
//! ```text
//! M_K  = cos(theta_K) sigma_z - sin(theta_K) sigma_x
//! M_K' = sin(theta_K) sigma_z + cos(theta_K) sigma_x
//! ```
//!
//! The three-party operator combines one observable per party,
//!
//! ```text
//! B3 = (M_A M_B M_C' + M_A M_B' M_C + M_A' M_B M_C - M_A' M_B' M_C') / 2
//! ```
//!
//! and its two-party analogue is the CHSH combination
//!
//! ```text
//! B2 = (M_A M_B + M_A M_B' + M_A' M_B - M_A' M_B') / 2
//! ```
//!
//! In this normalization any local-realistic model obeys `|<B>| <= 1`, so an
//! expectation whose magnitude strictly exceeds 1 certifies nonlocality. The
//! canonical angles are `theta_A = 0`, `theta_B = pi/6`, `theta_C = pi/3`.
//! Operators are time-independent values: the noise acts on the state, so
//! callers build an operator once per settings and reuse it across a sweep.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{pauli_x, pauli_z, ComplexMatrix};
use crate::state::DensityMatrix;

/// Largest imaginary part tolerated when a trace is reported as a real
/// expectation value.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum BellError {
    #[error("measurement angle must be finite, got {theta}")]
    NonFiniteAngle { theta: f64 },
    #[error("operator dimension {op_dim} does not match state dimension {state_dim}")]
    DimMismatch { op_dim: usize, state_dim: usize },
    #[error("expectation value has imaginary residue {residue:e} above {IMAG_RESIDUE_TOL:e}")]
    ImaginaryResidue { residue: f64 },
    #[error("operation requires a three-qubit state, got dimension {dim}")]
    NotThreeQubit { dim: usize },
}

/// Measurement angles (radians) for the three parties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellSettings {
    theta_a: f64,
    theta_b: f64,
    theta_c: f64,
}

impl BellSettings {
    pub fn new(theta_a: f64, theta_b: f64, theta_c: f64) -> Result<Self, BellError> {
        for theta in [theta_a, theta_b, theta_c] {
            if !theta.is_finite() {
                return Err(BellError::NonFiniteAngle { theta });
            }
        }
        Ok(Self { theta_a, theta_b, theta_c })
    }

    /// The canonical angles `(0, pi/6, pi/3)`.
    pub fn canonical() -> Self {
        Self {
            theta_a: 0.0,
            theta_b: std::f64::consts::FRAC_PI_6,
            theta_c: std::f64::consts::FRAC_PI_3,
        }
    }

    pub fn theta_a(&self) -> f64 {
        self.theta_a
    }

    pub fn theta_b(&self) -> f64 {
        self.theta_b
    }

    pub fn theta_c(&self) -> f64 {
        self.theta_c
    }
}

impl Default for BellSettings {
    fn default() -> Self {
        Self::canonical()
    }
}

/// A fully assembled Bell operator together with the settings that built it.
#[derive(Debug, Clone, PartialEq)]
pub struct BellOperator {
    n_parties: usize,
    mat: ComplexMatrix,
    settings: BellSettings,
}

impl BellOperator {
    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn settings(&self) -> &BellSettings {
        &self.settings
    }
}

/// The rotated observable pair `(M, M')` for one party at angle `theta`.
pub fn measurement_pair(theta: f64) -> (ComplexMatrix, ComplexMatrix) {
    let (sin, cos) = theta.sin_cos();
    let z = pauli_z();
    let x = pauli_x();
    let m = z.scale(Complex64::new(cos, 0.0))
        .add(&x.scale(Complex64::new(-sin, 0.0)))
        .expect("both terms are 2x2");
    let m_prime = z.scale(Complex64::new(sin, 0.0))
        .add(&x.scale(Complex64::new(cos, 0.0)))
        .expect("both terms are 2x2");
    (m, m_prime)
}

/// The four signed product terms of `B3` for the given settings, each as an
/// 8x8 matrix already carrying the overall 1/2 prefactor:
///
/// 1. `M_A M_B M_C' / 2`
/// 2. `M_A M_B' M_C / 2`
/// 3. `M_A' M_B M_C / 2`
/// 4. `M_A' M_B' M_C' / 2`
///
/// `B3` is `t1 + t2 + t3 - t4`.
fn b3_term_matrices(settings: &BellSettings) -> [ComplexMatrix; 4] {
    let (a, a_prime) = measurement_pair(settings.theta_a);
    let (b, b_prime) = measurement_pair(settings.theta_b);
    let (c, c_prime) = measurement_pair(settings.theta_c);
    let half = Complex64::new(0.5, 0.0);
    let product = |p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix| {
        p.kron(q).expect("2x2 pair").kron(r).expect("4x4 with 2x2").scale(half)
    };
    [
        product(&a, &b, &c_prime),
        product(&a, &b_prime, &c),
        product(&a_prime, &b, &c),
        product(&a_prime, &b_prime, &c_prime),
    ]
}

/// Builds the three-party Bell operator `B3` for the given settings.
pub fn build_b3(settings: &BellSettings) -> BellOperator {
    let [t1, t2, t3, t4] = b3_term_matrices(settings);
    let mat = t1
        .add(&t2)
        .and_then(|s| s.add(&t3))
        .and_then(|s| s.sub(&t4))
        .expect("all four terms are 8x8");
    BellOperator { n_parties: 3, mat, settings: *settings }
}

/// Builds the two-party CHSH operator `B2` with party A at angle 0 and party
/// B at `theta_b`.
pub fn build_b2(theta_b: f64) -> BellOperator {
    let settings = BellSettings::new(0.0, theta_b, 0.0)
        .expect("finite angle checked by the caller-facing constructor");
    let (a, a_prime) = measurement_pair(settings.theta_a);
    let (b, b_prime) = measurement_pair(settings.theta_b);
    let half = Complex64::new(0.5, 0.0);
    let product = |p: &ComplexMatrix, q: &ComplexMatrix| p.kron(q).expect("2x2 pair").scale(half);
    let mat = product(&a, &b)
        .add(&product(&a, &b_prime))
        .and_then(|s| s.add(&product(&a_prime, &b)))
        .and_then(|s| s.sub(&product(&a_prime, &b_prime)))
        .expect("all four terms are 4x4");
    BellOperator { n_parties: 2, mat, settings }
}

/// Real part of `tr(op * rho)`, after checking that the imaginary residue of
/// the trace is below [`IMAG_RESIDUE_TOL`].
fn real_trace_product(op: &ComplexMatrix, rho: &DensityMatrix) -> Result<f64, BellError> {
    if op.dim() != rho.dim() {
        return Err(BellError::DimMismatch { op_dim: op.dim(), state_dim: rho.dim() });
    }
    let n = op.dim();
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += op.get(i, j) * rho.matrix().get(j, i);
        }
    }
    if tr.im.abs() > IMAG_RESIDUE_TOL {
        return Err(BellError::ImaginaryResidue { residue: tr.im.abs() });
    }
    Ok(tr.re)
}

/// Signed expectation value `tr(B * rho)` as a real number.
pub fn expectation(op: &BellOperator, rho: &DensityMatrix) -> Result<f64, BellError> {
    real_trace_product(op.matrix(), rho)
}

/// The four term expectations `tr(term_k * rho)` of `B3` (each term carries
/// the 1/2 prefactor), in the order listed on [`build_b3`]'s term expansion.
/// The signed combination `t1 + t2 + t3 - t4` equals [`expectation`] of the
/// full operator.
pub fn term_expectations(
    rho: &DensityMatrix,
    settings: &BellSettings,
) -> Result<[f64; 4], BellError> {
    if rho.dim() != 8 {
        return Err(BellError::NotThreeQubit { dim: rho.dim() });
    }
    let [t1, t2, t3, t4] = b3_term_matrices(settings);
    Ok([
        real_trace_product(&t1, rho)?,
        real_trace_product(&t2, rho)?,
        real_trace_product(&t3, rho)?,
        real_trace_product(&t4, rho)?,
    ])
}

/// Whether `rho` violates the local bound: `|tr(B * rho)| > 1`, strictly.
/// A magnitude of exactly 1 sits on the boundary and does not count as a
/// violation.
pub fn violates_mabk(op: &BellOperator, rho: &DensityMatrix) -> Result<bool, BellError> {
    Ok(expectation(op, rho)?.abs() > 1.0)
}
