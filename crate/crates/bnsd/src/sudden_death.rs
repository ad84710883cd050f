//! Closed forms and crossing detection for the death of the Bell violation.
//!
//! For a W-class state with amplitudes `(a1, a2, a4)` under multi-local
//! dephasing, the magnitude of the three-party Bell expectation at the
//! canonical settings has the closed form
//!
//! ```text
//! |<B3>| = |1 + c12 gB gC + c24 gA gB + c14 gA gC| / 2,
//! c_jk = 2 Re(a_j conj(a_k)),
//! ```
//!
//! where `gK` is the dephasing factor of qubit K. With equal rates
//! (`gK = exp(-Gamma t)` for all K) every cross term decays like
//! `exp(-2 Gamma t)`, so the violation condition `|<B3>| > 1` fails at the
//! finite time
//!
//! ```text
//! tau = ln(s) / (2 Gamma),    s = c12 + c24 + c14,
//! ```
//!
//! whenever `s > 1`; for `s <= 1` the state never violates in the first
//! place. As `t -> infinity` the magnitude settles at 1/2 rather than 0: the
//! populations survive dephasing untouched.
//!
//! The closed-form route here and the numeric route (Kraus evolution plus a
//! brute-force trace, searched by bisection) are developed independently and
//! cross-checked in the test suite.

use thiserror::Error;

use crate::bell::{expectation, BellError, BellOperator, BellSettings};
use crate::noise::{apply_channel, factors_at, DephasingFactors, DephasingModel, NoiseError};
use crate::state::{DensityMatrix, WAmplitudes};

/// Relative bracket width at which the bisection stops: the final bracket is
/// no wider than `BRACKET_REL * max(1, t_max)`.
pub const BRACKET_REL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CrossingError {
    #[error("dephasing rate must be finite and positive, got {rate}")]
    NonPositiveRate { rate: f64 },
    #[error("threshold must be finite and positive, got {threshold}")]
    InvalidThreshold { threshold: f64 },
    #[error("search horizon must be finite and positive, got {t_max}")]
    InvalidHorizon { t_max: f64 },
    #[error(
        "no crossing in [0, {t_max}]: the magnitude is still {value_at_t_max} \
         (> threshold {threshold}) at the horizon"
    )]
    HorizonTooShort { t_max: f64, value_at_t_max: f64, threshold: f64 },
    #[error(transparent)]
    Bell(#[from] BellError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
}

/// The cross-term sum `s = 2 Re(a1 conj(a2) + a2 conj(a4) + a1 conj(a4))`.
///
/// Normalization pins it to `[-1, 2]`: `s = |a1 + a2 + a4|^2 - 1`. The
/// standard W state sits at the maximum, `s = 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossTermSum {
    s: f64,
}

impl CrossTermSum {
    pub fn value(&self) -> f64 {
        self.s
    }
}

/// Outcome of a sudden-death analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BnsdResult {
    /// The violation exists at `t = 0` and disappears at `tau`.
    DiesAt { tau: f64 },
    /// The state never violates the inequality, at any time.
    NeverViolates,
    /// Reserved: under this noise model every initial violation dies in
    /// finite time, so no constructor produces this variant.
    ViolatesForever,
}

impl BnsdResult {
    /// The death time, when there is one.
    pub fn tau(&self) -> Option<f64> {
        match self {
            BnsdResult::DiesAt { tau } => Some(*tau),
            _ => None,
        }
    }
}

/// Computes the cross-term sum of a W-class state.
pub fn cross_term_sum(amps: &WAmplitudes) -> CrossTermSum {
    let (a1, a2, a4) = (amps.a1(), amps.a2(), amps.a4());
    let s = 2.0 * (a1 * a2.conj() + a2 * a4.conj() + a1 * a4.conj()).re;
    CrossTermSum { s }
}

/// Closed-form `|<B3>|` at the canonical settings for the given amplitudes
/// and dephasing factors.
pub fn b3_magnitude_analytic(amps: &WAmplitudes, factors: &DephasingFactors) -> f64 {
    let (a1, a2, a4) = (amps.a1(), amps.a2(), amps.a4());
    let c12 = 2.0 * (a1 * a2.conj()).re;
    let c24 = 2.0 * (a2 * a4.conj()).re;
    let c14 = 2.0 * (a1 * a4.conj()).re;
    0.5 * (1.0
        + c12 * (factors.gamma_b() * factors.gamma_c())
        + c24 * (factors.gamma_a() * factors.gamma_b())
        + c14 * (factors.gamma_a() * factors.gamma_c()))
    .abs()
}

/// Closed-form `|<B3>|` for arbitrary measurement settings.
///
/// Expanding each rotated observable over `(sigma_z, sigma_x)` and tracing
/// against an evolved W-class state leaves four correlator patterns: the
/// all-`z` string (value -1) and the three two-`x` strings, which pick up the
/// cross terms `c_jk` times the matching factor pair. The aggregated
/// coefficients reduce to `(-1/2, -1/2, -1/2, -1/2)` at the canonical
/// settings, recovering [`b3_magnitude_analytic`].
pub fn b3_magnitude_with_settings(
    amps: &WAmplitudes,
    factors: &DephasingFactors,
    settings: &BellSettings,
) -> f64 {
    let (a1, a2, a4) = (amps.a1(), amps.a2(), amps.a4());
    let c12 = 2.0 * (a1 * a2.conj()).re;
    let c24 = 2.0 * (a2 * a4.conj()).re;
    let c14 = 2.0 * (a1 * a4.conj()).re;

    // Per-party coefficient vectors over (sigma_z, sigma_x): unprimed and
    // primed observables of the rigid rotation.
    let party = |theta: f64| -> [[f64; 2]; 2] {
        let (sin, cos) = theta.sin_cos();
        [[cos, -sin], [sin, cos]]
    };
    let a = party(settings.theta_a());
    let b = party(settings.theta_b());
    let c = party(settings.theta_c());

    // Aggregated coefficient of one correlator pattern (za, zb, zc pick the
    // z-component when true, the x-component when false) over the four
    // signed terms of B3.
    let coeff = |ia: usize, ib: usize, ic: usize| -> f64 {
        0.5 * (a[0][ia] * b[0][ib] * c[1][ic] + a[0][ia] * b[1][ib] * c[0][ic]
            + a[1][ia] * b[0][ib] * c[0][ic]
            - a[1][ia] * b[1][ib] * c[1][ic])
    };
    let k_zzz = coeff(0, 0, 0);
    let k_zxx = coeff(0, 1, 1);
    let k_xzx = coeff(1, 0, 1);
    let k_xxz = coeff(1, 1, 0);

    (-k_zzz
        + k_zxx * c12 * (factors.gamma_b() * factors.gamma_c())
        + k_xzx * c14 * (factors.gamma_a() * factors.gamma_c())
        + k_xxz * c24 * (factors.gamma_a() * factors.gamma_b()))
    .abs()
}

/// Whether the state violates the inequality before any noise: the
/// closed-form magnitude at unit factors strictly exceeds 1. For real
/// amplitudes this is the condition `a1 a2 + a2 a4 + a1 a4 > 1/2`.
pub fn initial_violation(amps: &WAmplitudes) -> bool {
    b3_magnitude_analytic(amps, &DephasingFactors::identity()) > 1.0
}

/// Closed-form sudden-death time for equal per-qubit rates.
///
/// Returns [`BnsdResult::DiesAt`] with `tau = ln(s) / (2 gamma_rate)` when
/// the cross-term sum exceeds 1, and [`BnsdResult::NeverViolates`] otherwise
/// (including exactly `s = 1`: the state then starts on the boundary, which
/// is not a violation). Unequal rates have no single-exponential closed
/// form; use [`find_crossing_numeric`] for those.
pub fn tau_bnsd_analytic(
    amps: &WAmplitudes,
    gamma_rate: f64,
) -> Result<BnsdResult, CrossingError> {
    if !gamma_rate.is_finite() || gamma_rate <= 0.0 {
        return Err(CrossingError::NonPositiveRate { rate: gamma_rate });
    }
    let s = cross_term_sum(amps).value();
    if s > 1.0 {
        Ok(BnsdResult::DiesAt { tau: s.ln() / (2.0 * gamma_rate) })
    } else {
        Ok(BnsdResult::NeverViolates)
    }
}

/// Locates the time at which `|tr(op * rho(t))|` falls to `threshold` by
/// bisection on `[0, t_max]`.
///
/// The state is evolved through the full Kraus channel at every probe time,
/// so this route is independent of the closed forms above. Returns
/// [`BnsdResult::NeverViolates`] when the initial magnitude is already at or
/// below the threshold, and an error when the magnitude is still above the
/// threshold at `t_max` (the horizon is too short to bracket a crossing).
/// The final bracket is narrower than [`BRACKET_REL`]` * max(1, t_max)`.
pub fn find_crossing_numeric(
    rho0: &DensityMatrix,
    model: &DephasingModel,
    op: &BellOperator,
    threshold: f64,
    t_max: f64,
) -> Result<BnsdResult, CrossingError> {
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(CrossingError::InvalidThreshold { threshold });
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(CrossingError::InvalidHorizon { t_max });
    }
    let magnitude = |t: f64| -> Result<f64, CrossingError> {
        let rho = apply_channel(rho0, &factors_at(model, t)?);
        Ok(expectation(op, &rho)?.abs())
    };

    if magnitude(0.0)? <= threshold {
        return Ok(BnsdResult::NeverViolates);
    }
    let value_at_t_max = magnitude(t_max)?;
    if value_at_t_max > threshold {
        return Err(CrossingError::HorizonTooShort { t_max, value_at_t_max, threshold });
    }

    let tol = BRACKET_REL * t_max.max(1.0);
    let mut lo = 0.0f64;
    let mut hi = t_max;
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if magnitude(mid)? > threshold {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(BnsdResult::DiesAt { tau: 0.5 * (lo + hi) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::build_b3;
    use crate::state::w_state_density;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_amps(a1: f64, a2: f64, a4: f64) -> WAmplitudes {
        WAmplitudes::new(c(a1, 0.0), c(a2, 0.0), c(a4, 0.0)).unwrap()
    }

    #[test]
    fn cross_term_sum_of_named_states() {
        let s = cross_term_sum(&WAmplitudes::standard_w()).value();
        assert!((s - 2.0).abs() < 1e-12);
        let s = cross_term_sum(&real_amps(1.0, 0.0, 0.0)).value();
        assert_eq!(s, 0.0);
        let s = cross_term_sum(&real_amps(FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0)).value();
        assert!((s + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cross_term_sum_stays_in_range() {
        // s = |a1 + a2 + a4|^2 - 1 pins the extremes.
        for amps in [
            WAmplitudes::standard_w(),
            real_amps(1.0, 0.0, 0.0),
            real_amps(FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0),
            WAmplitudes::normalized(c(0.2, 0.7), c(-0.3, 0.1), c(0.5, -0.2)).unwrap(),
        ] {
            let s = cross_term_sum(&amps).value();
            assert!((-1.0 - 1e-12..=2.0 + 1e-12).contains(&s));
        }
    }

    #[test]
    fn magnitude_of_standard_w() {
        let amps = WAmplitudes::standard_w();
        let m0 = b3_magnitude_analytic(&amps, &DephasingFactors::identity());
        assert!((m0 - 1.5).abs() < 1e-12);
        let m_inf = b3_magnitude_analytic(&amps, &DephasingFactors::fully_dephased());
        assert_eq!(m_inf, 0.5);
        // gamma^2 = 1/2 puts the standard W exactly on the boundary.
        let g = 0.5_f64.sqrt();
        let m = b3_magnitude_analytic(&amps, &DephasingFactors::from_gammas(g, g, g).unwrap());
        assert!((m - 1.0).abs() < 1e-12);
    }

    #[test]
    fn settings_form_reduces_to_the_canonical_closed_form() {
        let amps = WAmplitudes::normalized(c(0.6, 0.1), c(0.5, -0.3), c(0.4, 0.2)).unwrap();
        let f = DephasingFactors::from_gammas(0.9, 0.6, 0.3).unwrap();
        let canonical = b3_magnitude_analytic(&amps, &f);
        let general = b3_magnitude_with_settings(&amps, &f, &BellSettings::canonical());
        assert!((canonical - general).abs() < 1e-14);
    }

    #[test]
    fn settings_form_matches_the_numeric_trace() {
        let amps = WAmplitudes::normalized(c(0.7, -0.2), c(0.1, 0.4), c(-0.5, 0.3)).unwrap();
        let settings = BellSettings::new(0.15, -0.8, 2.1).unwrap();
        let op = build_b3(&settings);
        let model = DephasingModel::new(0.4, 1.3, 2.2).unwrap();
        for t in [0.0, 0.2, 1.0, 3.7] {
            let f = factors_at(&model, t).unwrap();
            let rho = apply_channel(&w_state_density(&amps), &f);
            let numeric = expectation(&op, &rho).unwrap().abs();
            let analytic = b3_magnitude_with_settings(&amps, &f, &settings);
            assert!((numeric - analytic).abs() < 1e-12);
        }
    }

    #[test]
    fn initial_violation_of_named_states() {
        assert!(initial_violation(&WAmplitudes::standard_w()));
        assert!(!initial_violation(&real_amps(1.0, 0.0, 0.0)));
    }

    #[test]
    fn initial_violation_is_strict_on_an_exact_boundary_state() {
        // a1 * a2 rounds to exactly 0.5, so the product sum is exactly the
        // boundary value and the cross-term sum is exactly 1.
        let a2 = FRAC_1_SQRT_2;
        let a1 = 0.5 / a2;
        assert_eq!(a1 * a2, 0.5);
        let amps = real_amps(a1, a2, 0.0);
        assert_eq!(cross_term_sum(&amps).value(), 1.0);
        assert_eq!(
            b3_magnitude_analytic(&amps, &DephasingFactors::identity()),
            1.0
        );
        assert!(!initial_violation(&amps));
        assert_eq!(tau_bnsd_analytic(&amps, 1.0).unwrap(), BnsdResult::NeverViolates);
    }

    #[test]
    fn analytic_tau_for_the_standard_w() {
        let result = tau_bnsd_analytic(&WAmplitudes::standard_w(), 1.0).unwrap();
        let tau = result.tau().unwrap();
        assert!((tau - LN_2 / 2.0).abs() < 1e-12);
        // Doubling the rate halves the death time.
        let result = tau_bnsd_analytic(&WAmplitudes::standard_w(), 2.0).unwrap();
        assert!((result.tau().unwrap() - LN_2 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn analytic_tau_scale_law() {
        let amps = WAmplitudes::normalized(c(0.8, 0.0), c(0.5, 0.0), c(0.4, 0.0)).unwrap();
        let base = tau_bnsd_analytic(&amps, 1.0).unwrap().tau().unwrap();
        for rate in [0.5, 3.0, 10.0] {
            let scaled = tau_bnsd_analytic(&amps, rate).unwrap().tau().unwrap();
            assert!((scaled * rate - base).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_tau_rejects_bad_rates_and_weak_states() {
        assert!(matches!(
            tau_bnsd_analytic(&WAmplitudes::standard_w(), 0.0),
            Err(CrossingError::NonPositiveRate { .. })
        ));
        assert!(matches!(
            tau_bnsd_analytic(&WAmplitudes::standard_w(), -1.0),
            Err(CrossingError::NonPositiveRate { .. })
        ));
        assert_eq!(
            tau_bnsd_analytic(&real_amps(1.0, 0.0, 0.0), 1.0).unwrap(),
            BnsdResult::NeverViolates
        );
    }

    #[test]
    fn bisection_matches_the_analytic_death_time() {
        let amps = WAmplitudes::standard_w();
        let rho0 = w_state_density(&amps);
        let model = DephasingModel::equal(1.0).unwrap();
        let op = build_b3(&BellSettings::canonical());
        let result = find_crossing_numeric(&rho0, &model, &op, 1.0, 10.0).unwrap();
        let tau = result.tau().unwrap();
        assert!((tau - LN_2 / 2.0).abs() < 1e-9);
    }

    #[test]
    fn bisection_reports_never_violating_states() {
        let rho0 = w_state_density(&real_amps(1.0, 0.0, 0.0));
        let model = DephasingModel::equal(1.0).unwrap();
        let op = build_b3(&BellSettings::canonical());
        assert_eq!(
            find_crossing_numeric(&rho0, &model, &op, 1.0, 10.0).unwrap(),
            BnsdResult::NeverViolates
        );
    }

    #[test]
    fn bisection_rejects_a_horizon_before_the_crossing() {
        let rho0 = w_state_density(&WAmplitudes::standard_w());
        let model = DephasingModel::equal(1.0).unwrap();
        let op = build_b3(&BellSettings::canonical());
        let err = find_crossing_numeric(&rho0, &model, &op, 1.0, 0.1).unwrap_err();
        match err {
            CrossingError::HorizonTooShort { value_at_t_max, .. } => {
                // |<B3>| at t = 0.1 is (1 + 2 exp(-0.2)) / 2.
                let want = 0.5 * (1.0 + 2.0 * (-0.2f64).exp());
                assert!((value_at_t_max - want).abs() < 1e-12);
            }
            other => panic!("expected HorizonTooShort, got {other:?}"),
        }
    }

    #[test]
    fn bisection_rejects_invalid_parameters() {
        let rho0 = w_state_density(&WAmplitudes::standard_w());
        let model = DephasingModel::equal(1.0).unwrap();
        let op = build_b3(&BellSettings::canonical());
        assert!(matches!(
            find_crossing_numeric(&rho0, &model, &op, 0.0, 10.0),
            Err(CrossingError::InvalidThreshold { .. })
        ));
        assert!(matches!(
            find_crossing_numeric(&rho0, &model, &op, 1.0, 0.0),
            Err(CrossingError::InvalidHorizon { .. })
        ));
    }

    #[test]
    fn unequal_rates_die_earlier_when_any_rate_grows() {
        let amps = WAmplitudes::standard_w();
        let rho0 = w_state_density(&amps);
        let op = build_b3(&BellSettings::canonical());
        let tau_at = |ra: f64, rb: f64, rc: f64| {
            let model = DephasingModel::new(ra, rb, rc).unwrap();
            find_crossing_numeric(&rho0, &model, &op, 1.0, 10.0)
                .unwrap()
                .tau()
                .unwrap()
        };
        let equal = tau_at(1.0, 1.0, 1.0);
        let faster_c = tau_at(1.0, 1.0, 2.0);
        let faster_bc = tau_at(1.0, 2.0, 2.0);
        assert!((equal - LN_2 / 2.0).abs() < 1e-9);
        assert!(faster_c < equal);
        assert!(faster_bc < faster_c);
    }

    #[test]
    fn never_violates_when_threshold_equals_the_initial_magnitude() {
        // |<B3>| of |001> is exactly 1/2 at all times; a threshold of 1/2 is
        // met immediately, which counts as no violation.
        let rho0 = w_state_density(&real_amps(1.0, 0.0, 0.0));
        let model = DephasingModel::equal(1.0).unwrap();
        let op = build_b3(&BellSettings::canonical());
        assert_eq!(
            find_crossing_numeric(&rho0, &model, &op, 0.5, 5.0).unwrap(),
            BnsdResult::NeverViolates
        );
    }

    #[test]
    fn bisection_bracket_is_tight() {
        let amps = WAmplitudes::standard_w();
        let rho0 = w_state_density(&amps);
        let model = DephasingModel::equal(1.0).unwrap();
        let op = build_b3(&BellSettings::canonical());
        // With t_max = 1 the bracket tolerance is 1e-10 exactly.
        let tau = find_crossing_numeric(&rho0, &model, &op, 1.0, 1.0)
            .unwrap()
            .tau()
            .unwrap();
        assert!((tau - LN_2 / 2.0).abs() < 1e-10 + 1e-12);
    }
}
