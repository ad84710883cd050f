//! The two-party member of the operator family: party A measures the pair at
//! angle 0, party B at a configurable angle. At theta_B = pi/4 the operator's
//! extreme eigenvalues are +-sqrt(2), reached by two of the four maximally
//! entangled states — while every product state stays within the local
//! bound 1.
//!
//! Run with:
//! ```text
//! cargo run -p bnsd --example chsh_pair
//! ```

use std::f64::consts::{FRAC_PI_4, FRAC_1_SQRT_2};

use bnsd::bell::{build_b2, expectation, measurement_pair};
use bnsd::state::pure_state_density;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn main() {
    let (m, mp) = measurement_pair(FRAC_PI_4);
    println!("measurement pair at theta = pi/4 (entries of 2x2 observables):");
    for (label, obs) in [("M ", &m), ("M'", &mp)] {
        println!(
            "  {label} = [[{:+.4}, {:+.4}], [{:+.4}, {:+.4}]]",
            obs.get(0, 0).re,
            obs.get(0, 1).re,
            obs.get(1, 0).re,
            obs.get(1, 1).re
        );
    }

    let op = build_b2(FRAC_PI_4);
    let eigenvalues = op.matrix().hermitian_eigenvalues(1e-12).unwrap();
    let formatted: Vec<String> = eigenvalues.iter().map(|v| format!("{v:+.6}")).collect();
    println!();
    println!("B2(pi/4) eigenvalues: [{}]", formatted.join(", "));

    let h = FRAC_1_SQRT_2;
    let bell_states = [
        ("(|00> + |11>)/sqrt(2)", [c(h), c(0.0), c(0.0), c(h)]),
        ("(|00> - |11>)/sqrt(2)", [c(h), c(0.0), c(0.0), c(-h)]),
        ("(|01> + |10>)/sqrt(2)", [c(0.0), c(h), c(h), c(0.0)]),
        ("(|01> - |10>)/sqrt(2)", [c(0.0), c(h), c(-h), c(0.0)]),
    ];
    println!();
    println!("expectations on the maximally entangled states:");
    for (label, vec) in bell_states {
        let rho = pure_state_density(&vec).unwrap();
        let e = expectation(&op, &rho).unwrap();
        println!("  {label:<24} <B2> = {e:+.9}");
    }

    println!();
    println!("expectations on separable states (never beyond 1 in magnitude):");
    let product_states = [
        ("|00>", [c(1.0), c(0.0), c(0.0), c(0.0)]),
        ("|01>", [c(0.0), c(1.0), c(0.0), c(0.0)]),
        ("|++>", [c(0.5), c(0.5), c(0.5), c(0.5)]),
        ("|0+>", [c(h), c(h), c(0.0), c(0.0)]),
    ];
    for (label, vec) in product_states {
        let rho = pure_state_density(&vec).unwrap();
        let e = expectation(&op, &rho).unwrap();
        println!("  {label:<24} <B2> = {e:+.9}");
    }
}
