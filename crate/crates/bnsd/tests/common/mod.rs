//! Deterministic samplers shared by the integration suites. Every sampler
//! draws from a caller-seeded ChaCha stream, so failures are reproducible.

#![allow(dead_code)] // each test binary uses its own subset

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bnsd::linalg::ComplexMatrix;
use bnsd::state::{pure_state_density, DensityMatrix, WAmplitudes};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random normalized complex amplitudes (rejects near-zero draws before
/// rescaling).
pub fn random_amps(rng: &mut ChaCha8Rng) -> WAmplitudes {
    loop {
        let a1 = random_complex(rng);
        let a2 = random_complex(rng);
        let a4 = random_complex(rng);
        if a1.norm_sqr() + a2.norm_sqr() + a4.norm_sqr() < 1e-3 {
            continue;
        }
        return WAmplitudes::normalized(a1, a2, a4).unwrap();
    }
}

/// Random normalized real amplitudes with arbitrary signs.
pub fn random_real_amps(rng: &mut ChaCha8Rng) -> WAmplitudes {
    loop {
        let a1: f64 = rng.gen_range(-1.0..1.0);
        let a2: f64 = rng.gen_range(-1.0..1.0);
        let a4: f64 = rng.gen_range(-1.0..1.0);
        if a1 * a1 + a2 * a2 + a4 * a4 < 1e-3 {
            continue;
        }
        return WAmplitudes::normalized(a1.into(), a2.into(), a4.into()).unwrap();
    }
}

/// Random normalized real nonnegative amplitudes.
pub fn random_nonneg_amps(rng: &mut ChaCha8Rng) -> WAmplitudes {
    loop {
        let a1: f64 = rng.gen_range(0.0..1.0);
        let a2: f64 = rng.gen_range(0.0..1.0);
        let a4: f64 = rng.gen_range(0.0..1.0);
        if a1 * a1 + a2 * a2 + a4 * a4 < 1e-3 {
            continue;
        }
        return WAmplitudes::normalized(a1.into(), a2.into(), a4.into()).unwrap();
    }
}

/// Random valid density matrix of the given dimension, via `G = A A†`
/// normalized to unit trace.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let entries: Vec<Complex64> = (0..dim * dim).map(|_| random_complex(rng)).collect();
    let a = ComplexMatrix::new(dim, entries).unwrap();
    let g = a.matmul(&a.adjoint()).unwrap();
    let trace = g.trace().re;
    assert!(trace > 0.0);
    let rho = g.scale(Complex64::new(trace.recip(), 0.0));
    DensityMatrix::new(rho).unwrap()
}

fn random_qubit(rng: &mut ChaCha8Rng) -> [Complex64; 2] {
    let alpha: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    [
        Complex64::new(alpha.cos(), 0.0),
        Complex64::from_polar(alpha.sin(), phi),
    ]
}

/// Random two-qubit product state (first factor is the most significant
/// qubit).
pub fn random_product_state(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let u = random_qubit(rng);
    let v = random_qubit(rng);
    let mut vec = [Complex64::new(0.0, 0.0); 4];
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            vec[2 * i + j] = ui * vj;
        }
    }
    pure_state_density(&vec).unwrap()
}

pub fn random_rate(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.1..10.0)
}
