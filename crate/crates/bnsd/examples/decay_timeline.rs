//! Tabulates the decay of the three-party Bell expectation for the standard
//! W state under equal-rate dephasing, evaluating every time point twice:
//! through the dense Kraus channel plus a brute-force trace, and through the
//! closed form. The violation (magnitude above 1) dies near t = 0.3466 while
//! the magnitude itself settles at 1/2, not 0.
//!
//! Run with:
//! ```text
//! cargo run -p bnsd --example decay_timeline
//! ```

use bnsd::bell::{build_b3, expectation, BellSettings};
use bnsd::noise::{apply_channel, factors_at, DephasingModel};
use bnsd::state::{w_state_density, WAmplitudes};
use bnsd::sudden_death::b3_magnitude_analytic;

fn main() {
    let amps = WAmplitudes::standard_w();
    let rho0 = w_state_density(&amps);
    let model = DephasingModel::equal(1.0).unwrap();
    let op = build_b3(&BellSettings::canonical());

    println!("standard W state, all three qubits dephasing at rate 1.0");
    println!(
        "{:>5}  {:>8}  {:>12}  {:>12}  {:>9}  violates",
        "t", "gamma", "numeric", "closed form", "diff"
    );

    let times = [0.0, 0.1, 0.2, 0.3, 0.35, 0.4, 0.5, 0.7, 1.0, 2.0, 5.0];
    for t in times {
        let factors = factors_at(&model, t).unwrap();
        let rho = apply_channel(&rho0, &factors);
        let numeric = expectation(&op, &rho).unwrap().abs();
        let analytic = b3_magnitude_analytic(&amps, &factors);
        println!(
            "{t:>5.2}  {:>8.5}  {numeric:>12.9}  {analytic:>12.9}  {:>9.2e}  {}",
            factors.gamma_a(),
            (numeric - analytic).abs(),
            if numeric > 1.0 { "yes" } else { "no" }
        );
    }

    println!();
    println!("the magnitude approaches 1/2 as the coherences die, so the state");
    println!("stops violating the inequality long before it stops being entangled");
}
