//! Bell-nonlocality sudden death (BNSD) in three-qubit W states under
//! multi-local dephasing.
//!
//! This crate simulates a three-qubit system prepared in a W-class state
//! `a1|001> + a2|010> + a4|100>` whose qubits dephase independently, each at
//! its own rate. It tracks the expectation of a tripartite Bell operator
//! (and its two-qubit CHSH analogue) as the coherences decay, and locates the
//! finite time at which the Bell-inequality violation disappears even though
//! the state remains entangled.
//!
//! Two routes are implemented for every headline quantity and are
//! cross-validated in the test suite:
//!
//! * a **numeric** route: dense operator-sum (Kraus) evolution of the 8x8
//!   density matrix followed by a brute-force trace against the Bell
//!   operator, and
//! * an **analytic** route: closed-form expressions for the evolved matrix,
//!   the Bell expectation, and the sudden-death time.
//!
//! # Modules
//!
//! * [`linalg`]: dense complex matrices sized for 2-, 4- and 8-dimensional
//!   operators (Kronecker products, adjoints, Hermitian eigenvalues).
//! * [`state`]: W-state amplitudes and validated density matrices.
//! * [`noise`]: the multi-local asymptotic dephasing channel, both as eight
//!   explicit Kraus operators and as a closed-form coherence scaling.
//! * [`bell`]: rotated measurement pairs and the `B2` (CHSH) / `B3`
//!   (three-party) Bell operators.
//! * [`sudden_death`]: the cross-term sum, closed-form violation magnitude,
//!   analytic sudden-death time, and a bisection crossing detector.
//! * [`sweep`]: time sweeps that tabulate both routes into CSV rows.
//! * [`config`]: command-line and config-file parsing for the `bnsd-sweep`
//!   binary.
//!
//! # Examples
//!
//! The `examples/` directory is the guided tour; each file is runnable on its
//! own:
//!
//! ```text
//! cargo run --example decay_timeline      # W state decay, numeric vs closed form
//! cargo run --example kraus_channel       # the eight dephasing Kraus operators
//! cargo run --example sudden_death_time   # analytic vs bisection death times
//! cargo run --example violation_criterion # which W states violate at t = 0
//! cargo run --example chsh_pair           # two-qubit CHSH sanity checks
//! cargo run --example unequal_rates       # per-qubit rates, numeric-only search
//! cargo run --example sweep_to_csv        # the sweep API behind bnsd-sweep
//! ```
//!
//! The one binary, `bnsd-sweep`, exposes the sweep as a command-line tool:
//!
//! ```text
//! cargo run --bin bnsd-sweep -- --state w-standard --gamma-rate 1.0 \
//!     --t-max 2 --steps 201 --output w_standard.csv
//! ```
//!
//! # Quick start
//!
//! ```
//! use bnsd::{
//!     bell::{build_b3, expectation, BellSettings},
//!     noise::{apply_channel, factors_at, DephasingModel},
//!     state::{w_state_density, WAmplitudes},
//!     sudden_death::{tau_bnsd_analytic, BnsdResult},
//! };
//!
//! let amps = WAmplitudes::standard_w();
//! let rho0 = w_state_density(&amps);
//! let model = DephasingModel::equal(1.0).unwrap();
//! let op = build_b3(&BellSettings::canonical());
//!
//! // Violates at t = 0 ...
//! let e0 = expectation(&op, &rho0).unwrap();
//! assert!(e0.abs() > 1.0);
//!
//! // ... but the violation dies at tau = ln(2)/2.
//! let rho = apply_channel(&rho0, &factors_at(&model, 1.0).unwrap());
//! assert!(expectation(&op, &rho).unwrap().abs() < 1.0);
//! match tau_bnsd_analytic(&amps, 1.0).unwrap() {
//!     BnsdResult::DiesAt { tau } => assert!((tau - 0.5 * 2.0_f64.ln()).abs() < 1e-12),
//!     other => panic!("unexpected outcome {other:?}"),
//! }
//! ```

pub mod bell;
pub mod config;
pub mod linalg;
pub mod noise;
pub mod state;
pub mod sudden_death;
pub mod sweep;

pub use bell::{build_b2, build_b3, expectation, measurement_pair, term_expectations,
               violates_mabk, BellOperator, BellSettings};
pub use linalg::{ComplexMatrix, ComplexScalar};
pub use noise::{apply_channel, evolved_w_analytic, factors_at, kraus_operators,
                DephasingFactors, DephasingModel};
pub use state::{pure_state_density, validate_density, w_state_density, DensityMatrix,
                WAmplitudes};
pub use sudden_death::{b3_magnitude_analytic, b3_magnitude_with_settings, cross_term_sum,
                       find_crossing_numeric, initial_violation, tau_bnsd_analytic,
                       BnsdResult, CrossTermSum};
pub use config::{parse_cli, parse_complex, parse_config, ConfigError, ParsedCli};
pub use sweep::{crossing_report, parse_csv, run_sweep, write_csv, CrossingOutcome,
                CrossingReport, SweepConfig, SweepRow, SweepSummary};
