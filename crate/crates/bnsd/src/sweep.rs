//! Time sweeps: tabulate the Bell expectation over a uniform time grid,
//! cross-check the two evaluation routes row by row, and assemble a summary
//! with the crossing analysis.
//!
//! Every row carries both the numeric magnitude (full Kraus evolution plus a
//! brute-force trace) and the closed-form magnitude; the sweep aborts with
//! [`SweepError::SelfCheck`] if they ever drift apart by more than
//! [`ROW_SELF_CHECK_TOL`]. The CSV writer emits a fixed header, shortest
//! round-trip decimal numbers, lowercase booleans, and LF line endings, so a
//! given configuration always produces byte-identical output.

use std::fmt;
use std::io;

use thiserror::Error;

use crate::bell::{build_b3, expectation, BellError, BellOperator, BellSettings};
use crate::noise::{apply_channel, factors_at, DephasingFactors, DephasingModel, NoiseError};
use crate::state::{w_state_density, DensityMatrix, WAmplitudes};
use crate::sudden_death::{
    b3_magnitude_analytic, b3_magnitude_with_settings, find_crossing_numeric, tau_bnsd_analytic,
    BnsdResult, CrossingError,
};

/// Maximum allowed disagreement between the numeric and closed-form
/// magnitudes on any emitted row.
pub const ROW_SELF_CHECK_TOL: f64 = 1e-9;

/// The exact CSV header line (no trailing newline).
pub const CSV_HEADER: &str = "t,gamma_A,gamma_B,gamma_C,b3_numeric,b3_analytic,violates";

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("steps must be at least 2 (both endpoints are tabulated), got {steps}")]
    InvalidSteps { steps: usize },
    #[error("t_max must be finite and positive, got {t_max}")]
    InvalidHorizon { t_max: f64 },
    #[error("threshold must be finite and positive, got {threshold}")]
    InvalidThreshold { threshold: f64 },
    #[error(
        "self-check failed at t = {t}: numeric {numeric} vs analytic {analytic} \
         (difference {difference} exceeds {ROW_SELF_CHECK_TOL})"
    )]
    SelfCheck { t: f64, numeric: f64, analytic: f64, difference: f64 },
    #[error("CSV parse error on line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error(transparent)]
    Crossing(#[from] CrossingError),
    #[error(transparent)]
    Bell(#[from] BellError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
}

/// Full description of one sweep: the initial state, the noise model, the
/// measurement settings, the time grid, and the output destination.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub amps: WAmplitudes,
    pub model: DephasingModel,
    pub settings: BellSettings,
    pub t_max: f64,
    pub steps: usize,
    pub threshold: f64,
    /// Destination path for the CSV table; `-` means standard output.
    pub output: String,
}

impl SweepConfig {
    /// A sweep of the given state with the default grid: unit equal rates,
    /// canonical settings, 201 points on `[0, 5]`, threshold 1, CSV to
    /// standard output.
    pub fn standard(amps: WAmplitudes) -> Self {
        SweepConfig {
            amps,
            model: DephasingModel::equal(1.0).expect("unit rate is valid"),
            settings: BellSettings::canonical(),
            t_max: 5.0,
            steps: 201,
            threshold: 1.0,
            output: "-".to_string(),
        }
    }
}

/// One tabulated time point. The two `b3` columns are magnitudes
/// (absolute values of the Bell expectation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub gamma_c: f64,
    pub b3_numeric: f64,
    pub b3_analytic: f64,
    pub violates: bool,
}

/// How the violation behaves over the swept window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingOutcome {
    /// The violation exists at `t = 0` and dies inside the window.
    DiesAt,
    /// The state never violates the inequality.
    NeverViolates,
    /// The violation is still alive at `t_max`; extend the horizon to
    /// bracket the crossing.
    PersistsBeyondHorizon,
}

impl fmt::Display for CrossingOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            CrossingOutcome::DiesAt => "dies_at",
            CrossingOutcome::NeverViolates => "never_violates",
            CrossingOutcome::PersistsBeyondHorizon => "persists_beyond_t_max",
        };
        f.write_str(label)
    }
}

/// Crossing analysis attached to a sweep summary.
///
/// `tau_analytic` is present only where the closed form applies: equal rates
/// on all three qubits, the canonical settings, threshold exactly 1, and an
/// initial violation. `tau_numeric` is present when the bisection brackets a
/// crossing inside the window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingReport {
    pub outcome: CrossingOutcome,
    pub tau_analytic: Option<f64>,
    pub tau_numeric: Option<f64>,
    pub tau_abs_difference: Option<f64>,
}

impl CrossingReport {
    /// The `key: value` lines for this report, in stable order.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("outcome: {}", self.outcome)];
        if let Some(tau) = self.tau_analytic {
            out.push(format!("tau_analytic: {tau}"));
        }
        if let Some(tau) = self.tau_numeric {
            out.push(format!("tau_numeric: {tau}"));
        }
        if let Some(diff) = self.tau_abs_difference {
            out.push(format!("tau_abs_difference: {diff}"));
        }
        out
    }
}

/// Headline numbers for a completed sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    /// Numeric magnitude at `t = 0`.
    pub initial_magnitude: f64,
    /// Numeric magnitude at `t = t_max` (a finite-horizon estimate of the
    /// long-time limit).
    pub asymptotic_magnitude: f64,
    pub crossing: CrossingReport,
}

impl SweepSummary {
    /// The `key: value` lines for this summary, in stable order.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("initial_magnitude: {}", self.initial_magnitude),
            format!("asymptotic_magnitude: {}", self.asymptotic_magnitude),
        ];
        out.extend(self.crossing.lines());
        out
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lines().join("\n"))
    }
}

fn validate(config: &SweepConfig) -> Result<(), SweepError> {
    if config.steps < 2 {
        return Err(SweepError::InvalidSteps { steps: config.steps });
    }
    if !config.t_max.is_finite() || config.t_max <= 0.0 {
        return Err(SweepError::InvalidHorizon { t_max: config.t_max });
    }
    if !config.threshold.is_finite() || config.threshold <= 0.0 {
        return Err(SweepError::InvalidThreshold { threshold: config.threshold });
    }
    Ok(())
}

fn closed_form_magnitude(config: &SweepConfig, factors: &DephasingFactors) -> f64 {
    if config.settings == BellSettings::canonical() {
        b3_magnitude_analytic(&config.amps, factors)
    } else {
        b3_magnitude_with_settings(&config.amps, factors, &config.settings)
    }
}

/// Runs only the crossing analysis for a configuration (the `--find-tau`
/// path): the bisection search, plus the closed-form death time where it
/// applies, without tabulating any rows.
pub fn crossing_report(config: &SweepConfig) -> Result<CrossingReport, SweepError> {
    validate(config)?;
    let op = build_b3(&config.settings);
    let rho0 = w_state_density(&config.amps);
    crossing_report_for(config, &rho0, &op)
}

fn crossing_report_for(
    config: &SweepConfig,
    rho0: &DensityMatrix,
    op: &BellOperator,
) -> Result<CrossingReport, SweepError> {
    let (outcome, tau_numeric) =
        match find_crossing_numeric(rho0, &config.model, op, config.threshold, config.t_max) {
            Ok(BnsdResult::DiesAt { tau }) => (CrossingOutcome::DiesAt, Some(tau)),
            Ok(BnsdResult::NeverViolates) => (CrossingOutcome::NeverViolates, None),
            Ok(BnsdResult::ViolatesForever) | Err(CrossingError::HorizonTooShort { .. }) => {
                (CrossingOutcome::PersistsBeyondHorizon, None)
            }
            Err(err) => return Err(err.into()),
        };

    let closed_form_applies =
        config.settings == BellSettings::canonical() && config.threshold == 1.0;
    let tau_analytic = if closed_form_applies {
        config
            .model
            .uniform_rate()
            .and_then(|rate| tau_bnsd_analytic(&config.amps, rate).ok())
            .and_then(|result| result.tau())
    } else {
        None
    };
    let tau_abs_difference = match (tau_analytic, tau_numeric) {
        (Some(a), Some(n)) => Some((a - n).abs()),
        _ => None,
    };

    Ok(CrossingReport { outcome, tau_analytic, tau_numeric, tau_abs_difference })
}

/// Runs the sweep: `steps` uniformly spaced times covering both endpoints of
/// `[0, t_max]`, each row evaluated by the Kraus route and the closed form
/// and cross-checked, followed by the crossing analysis.
pub fn run_sweep(config: &SweepConfig) -> Result<(Vec<SweepRow>, SweepSummary), SweepError> {
    validate(config)?;
    let op = build_b3(&config.settings);
    let rho0 = w_state_density(&config.amps);

    let mut rows = Vec::with_capacity(config.steps);
    for i in 0..config.steps {
        let t = config.t_max * (i as f64) / ((config.steps - 1) as f64);
        let factors = factors_at(&config.model, t)?;
        let rho = apply_channel(&rho0, &factors);
        let numeric = expectation(&op, &rho)?.abs();
        let analytic = closed_form_magnitude(config, &factors);
        let difference = (numeric - analytic).abs();
        if difference > ROW_SELF_CHECK_TOL {
            return Err(SweepError::SelfCheck { t, numeric, analytic, difference });
        }
        rows.push(SweepRow {
            t,
            gamma_a: factors.gamma_a(),
            gamma_b: factors.gamma_b(),
            gamma_c: factors.gamma_c(),
            b3_numeric: numeric,
            b3_analytic: analytic,
            violates: numeric > config.threshold,
        });
    }

    let crossing = crossing_report_for(config, &rho0, &op)?;
    let summary = SweepSummary {
        initial_magnitude: rows[0].b3_numeric,
        asymptotic_magnitude: rows[rows.len() - 1].b3_numeric,
        crossing,
    };
    Ok((rows, summary))
}

/// Writes rows as CSV: the fixed header, then one line per row with numbers
/// in shortest round-trip decimal form, booleans lowercase, LF endings.
pub fn write_csv<W: io::Write>(rows: &[SweepRow], writer: &mut W) -> io::Result<()> {
    writeln!(writer, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            writer,
            "{},{},{},{},{},{},{}",
            row.t, row.gamma_a, row.gamma_b, row.gamma_c, row.b3_numeric, row.b3_analytic,
            row.violates
        )?;
    }
    Ok(())
}

/// Parses CSV text produced by [`write_csv`] back into rows. Numeric fields
/// round-trip exactly (shortest round-trip printing is lossless for f64).
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, SweepError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(SweepError::Csv {
                line: 1,
                reason: format!("expected header {CSV_HEADER:?}, got {header:?}"),
            })
        }
        None => {
            return Err(SweepError::Csv { line: 1, reason: "empty input".to_string() });
        }
    }

    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(SweepError::Csv {
                line: line_no,
                reason: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        let real = |i: usize| -> Result<f64, SweepError> {
            fields[i].parse::<f64>().map_err(|e| SweepError::Csv {
                line: line_no,
                reason: format!("field {}: {e}", i + 1),
            })
        };
        let violates = match fields[6] {
            "true" => true,
            "false" => false,
            other => {
                return Err(SweepError::Csv {
                    line: line_no,
                    reason: format!("field 7: expected true/false, got {other:?}"),
                })
            }
        };
        rows.push(SweepRow {
            t: real(0)?,
            gamma_a: real(1)?,
            gamma_b: real(2)?,
            gamma_c: real(3)?,
            b3_numeric: real(4)?,
            b3_analytic: real(5)?,
            violates,
        });
    }
    Ok(rows)
}
