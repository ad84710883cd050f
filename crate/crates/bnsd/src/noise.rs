//! Multi-local asymptotic dephasing of three qubits.
//!
//! Each qubit K in {A, B, C} dephases independently with factor
//! `gamma_K(t) = exp(-Gamma_K * t)` and complement
//! `omega_K(t) = sqrt(1 - gamma_K^2)`. The channel on qubit A alone has the
//! Kraus pair `E1 = diag(1, gamma_A)` and `E2 = diag(0, omega_A)` (embedded
//! as `E (x) I (x) I`), and likewise `F1/F2` on B and `G1/G2` on C. The full
//! three-qubit channel is the family of eight diagonal products
//! `D = G_k * F_j * E_i`.
//!
//! The channel is parameterized by the factors rather than by `(Gamma, t)`
//! directly, so edge values such as `gamma = 0` (complete dephasing), which
//! no finite time reaches, can be probed exactly.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::state::{validate_density, DensityMatrix, WAmplitudes};

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("dephasing rate must be finite and nonnegative, got {rate}")]
    InvalidRate { rate: f64 },
    #[error("time must be finite and nonnegative, got {t}")]
    InvalidTime { t: f64 },
    #[error("dephasing factor must lie in [0, 1], got {gamma}")]
    InvalidFactor { gamma: f64 },
}

/// Per-qubit dephasing rates `Gamma_A`, `Gamma_B`, `Gamma_C` (each >= 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingModel {
    rate_a: f64,
    rate_b: f64,
    rate_c: f64,
}

impl DephasingModel {
    pub fn new(rate_a: f64, rate_b: f64, rate_c: f64) -> Result<Self, NoiseError> {
        for rate in [rate_a, rate_b, rate_c] {
            if !rate.is_finite() || rate < 0.0 {
                return Err(NoiseError::InvalidRate { rate });
            }
        }
        Ok(Self { rate_a, rate_b, rate_c })
    }

    /// All three qubits dephase at the same rate.
    pub fn equal(rate: f64) -> Result<Self, NoiseError> {
        Self::new(rate, rate, rate)
    }

    pub fn rate_a(&self) -> f64 {
        self.rate_a
    }

    pub fn rate_b(&self) -> f64 {
        self.rate_b
    }

    pub fn rate_c(&self) -> f64 {
        self.rate_c
    }

    /// The common rate when all three agree exactly, `None` otherwise.
    pub fn uniform_rate(&self) -> Option<f64> {
        (self.rate_a == self.rate_b && self.rate_b == self.rate_c).then_some(self.rate_a)
    }
}

/// Snapshot of the six dephasing factors at one instant:
/// `gamma_K in [0, 1]` and `omega_K = sqrt(1 - gamma_K^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingFactors {
    gamma_a: f64,
    gamma_b: f64,
    gamma_c: f64,
    omega_a: f64,
    omega_b: f64,
    omega_c: f64,
}

impl DephasingFactors {
    /// Builds the factor set from the three `gamma` values, deriving each
    /// `omega` so that `gamma^2 + omega^2 = 1` holds to machine precision.
    pub fn from_gammas(gamma_a: f64, gamma_b: f64, gamma_c: f64) -> Result<Self, NoiseError> {
        for gamma in [gamma_a, gamma_b, gamma_c] {
            if !gamma.is_finite() || !(0.0..=1.0).contains(&gamma) {
                return Err(NoiseError::InvalidFactor { gamma });
            }
        }
        let omega = |g: f64| (1.0 - g * g).sqrt();
        Ok(Self {
            gamma_a,
            gamma_b,
            gamma_c,
            omega_a: omega(gamma_a),
            omega_b: omega(gamma_b),
            omega_c: omega(gamma_c),
        })
    }

    /// The `t = 0` factor set: `gamma = 1` on every qubit, no decoherence.
    pub fn identity() -> Self {
        Self::from_gammas(1.0, 1.0, 1.0).expect("1 is a valid factor")
    }

    /// The infinite-time limit: `gamma = 0`, all affected coherences gone.
    pub fn fully_dephased() -> Self {
        Self::from_gammas(0.0, 0.0, 0.0).expect("0 is a valid factor")
    }

    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }

    pub fn gamma_c(&self) -> f64 {
        self.gamma_c
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }
}

/// Dephasing factors of `model` after evolving for time `t >= 0`.
pub fn factors_at(model: &DephasingModel, t: f64) -> Result<DephasingFactors, NoiseError> {
    if !t.is_finite() || t < 0.0 {
        return Err(NoiseError::InvalidTime { t });
    }
    DephasingFactors::from_gammas(
        (-model.rate_a * t).exp(),
        (-model.rate_b * t).exp(),
        (-model.rate_c * t).exp(),
    )
}

/// The eight Kraus operators `D = G_k * F_j * E_i` as explicit diagonal 8x8
/// matrices, ordered lexicographically in `(i, j, k)` with each index in
/// {1, 2}; the first element is therefore `G_1 F_1 E_1`.
pub fn kraus_operators(factors: &DephasingFactors) -> Vec<ComplexMatrix> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let zero = c(0.0);
    let one = c(1.0);
    let i2 = ComplexMatrix::identity(2).expect("dimension 2 is supported");
    let pair = |gamma: f64, omega: f64| {
        [
            ComplexMatrix::from_diagonal(&[one, c(gamma)]).expect("finite diagonal"),
            ComplexMatrix::from_diagonal(&[zero, c(omega)]).expect("finite diagonal"),
        ]
    };
    let e = pair(factors.gamma_a, factors.omega_a);
    let f = pair(factors.gamma_b, factors.omega_b);
    let g = pair(factors.gamma_c, factors.omega_c);

    let embed_a = |m: &ComplexMatrix| m.kron(&i2).unwrap().kron(&i2).unwrap();
    let embed_b = |m: &ComplexMatrix| i2.kron(m).unwrap().kron(&i2).unwrap();
    let embed_c = |m: &ComplexMatrix| i2.kron(&i2).unwrap().kron(m).unwrap();

    let mut ops = Vec::with_capacity(8);
    for ei in &e {
        for fj in &f {
            for gk in &g {
                let d = embed_c(gk)
                    .matmul(&embed_b(fj))
                    .expect("embeddings share dimension 8")
                    .matmul(&embed_a(ei))
                    .expect("embeddings share dimension 8");
                ops.push(d);
            }
        }
    }
    ops
}

/// Evolves `rho0` through the dephasing channel by the operator sum
/// `sum_mu D_mu rho0 D_mu^dagger` over the eight Kraus operators.
///
/// This is the numeric route: the Kraus matrices are materialized and the
/// triple products evaluated with full matrix multiplications, independent of
/// the closed form in [`evolved_w_analytic`].
pub fn apply_channel(rho0: &DensityMatrix, factors: &DephasingFactors) -> DensityMatrix {
    let mut acc = ComplexMatrix::zeros(rho0.dim()).expect("density dimensions are supported");
    for d in kraus_operators(factors) {
        let term = d
            .matmul(rho0.matrix())
            .expect("Kraus operators match the state dimension")
            .matmul(&d.adjoint())
            .expect("Kraus operators match the state dimension");
        acc = acc.add(&term).expect("accumulator keeps dimension");
    }
    validate_density(acc, 1e-10)
        .expect("the dephasing channel preserves density-matrix invariants")
}

/// Closed-form evolution of a W-class state: populations are untouched and
/// each coherence picks up the product of the factors of the two qubits
/// whose bits differ, giving
///
/// ```text
/// rho_12 -> rho_12 * gamma_B * gamma_C
/// rho_14 -> rho_14 * gamma_A * gamma_C
/// rho_24 -> rho_24 * gamma_A * gamma_B
/// ```
pub fn evolved_w_analytic(amps: &WAmplitudes, factors: &DephasingFactors) -> DensityMatrix {
    let v = amps.to_state_vector();
    let scale_bc = Complex64::new(factors.gamma_b * factors.gamma_c, 0.0);
    let scale_ac = Complex64::new(factors.gamma_a * factors.gamma_c, 0.0);
    let scale_ab = Complex64::new(factors.gamma_a * factors.gamma_b, 0.0);

    let mut entries = vec![Complex64::new(0.0, 0.0); 64];
    for i in [1usize, 2, 4] {
        entries[i * 8 + i] = v[i] * v[i].conj();
    }
    entries[8 + 2] = v[1] * v[2].conj() * scale_bc;
    entries[2 * 8 + 1] = v[2] * v[1].conj() * scale_bc;
    entries[8 + 4] = v[1] * v[4].conj() * scale_ac;
    entries[4 * 8 + 1] = v[4] * v[1].conj() * scale_ac;
    entries[2 * 8 + 4] = v[2] * v[4].conj() * scale_ab;
    entries[4 * 8 + 2] = v[4] * v[2].conj() * scale_ab;

    let mat = ComplexMatrix::new(8, entries).expect("finite inputs give a finite matrix");
    validate_density(mat, 1e-10).expect("scaled coherences keep the matrix a density matrix")
}
