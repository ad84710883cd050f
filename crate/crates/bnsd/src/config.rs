//! Configuration for the `bnsd-sweep` binary: command-line flags, an
//! optional flat `key = value` config file, and the merge rule
//! *flags override file values override defaults*.
//!
//! Amplitudes are written as three comma-separated complex literals in
//! `re+imi` form (`0.5-0.5i`, `1`, `i`, `2e-3+1e-4i`). By default the parsed
//! vector is normalized before use; `--no-auto-normalize` demands input that
//! is already normalized. The state must come from exactly one source
//! (`--state` preset or `--amps` literals), and likewise the rates
//! (`--gamma-rate` for equal rates or `--gamma-rates` per qubit).

use std::ffi::OsString;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
use std::path::PathBuf;

use clap::Parser;
use num_complex::Complex64;
use thiserror::Error;

use crate::bell::BellSettings;
use crate::noise::DephasingModel;
use crate::state::{StateError, WAmplitudes};
use crate::sweep::SweepConfig;

#[derive(Debug, Error)]
pub enum ConfigError {
    /// Usage errors from flag parsing, but also the help/version requests,
    /// which the binary must recognize and treat as success.
    #[error(transparent)]
    Cli(#[from] clap::Error),
    #[error("cannot read config file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config file line {line}: {reason}")]
    File { line: usize, reason: String },
    #[error("invalid {what}: {reason}")]
    Value { what: &'static str, reason: String },
    #[error(
        "a state source is required: pass --state <preset> or --amps <c1,c2,c3>, \
         or set `state`/`amps` in the config file"
    )]
    MissingState,
    #[error("`state` and `amps` are mutually exclusive; the config file sets both")]
    ConflictingStateSources,
    #[error("`gamma_rate` and `gamma_rates` are mutually exclusive; the config file sets both")]
    ConflictingRateSources,
    #[error(transparent)]
    State(#[from] StateError),
}

const AFTER_HELP: &str = "\
CONFIG FILE:
    Flat `key = value` lines; `#` starts a comment. Keys mirror the flags:
    state, amps, auto_normalize, gamma_rate, gamma_rates, theta_b, theta_c,
    t_max, steps, threshold, output. Flags override file values.

AMPLITUDES:
    Three comma-separated complex literals in re+imi form, e.g.
    `--amps 0.577350+0i,0.577350+0i,0.577350+0i`. Auto-normalization is on
    unless --no-auto-normalize is given.

EXIT CODES:
    0 success, 2 configuration error, 3 numerical self-check failure,
    1 other failure.

REPRODUCTION:
    bnsd-sweep --state w-standard --gamma-rate 1.0 --t-max 2 --steps 201 \\
        --output w_standard.csv";

/// Raw command-line surface. `Option` fields distinguish "not given" from a
/// value, so file values and defaults can fill the gaps.
#[derive(Debug, Parser)]
#[command(
    name = "bnsd-sweep",
    version,
    about = "Sweep the three-qubit Bell expectation of a dephasing W state \
             and locate the sudden death of its violation",
    after_help = AFTER_HELP
)]
struct RawArgs {
    /// Named state preset (`w-standard` = equal real amplitudes 1/sqrt(3)).
    #[arg(long, value_name = "PRESET", conflicts_with = "amps")]
    state: Option<String>,

    /// Three comma-separated complex amplitudes for |001>, |010>, |100>.
    #[arg(long, value_name = "C1,C2,C3", allow_hyphen_values = true)]
    amps: Option<String>,

    /// Reject amplitudes that are not already normalized instead of
    /// rescaling them.
    #[arg(long)]
    no_auto_normalize: bool,

    /// Equal dephasing rate for all three qubits [default: 1.0].
    #[arg(long, value_name = "RATE", conflicts_with = "gamma_rates", allow_negative_numbers = true)]
    gamma_rate: Option<f64>,

    /// Per-qubit dephasing rates.
    #[arg(long, value_name = "RA,RB,RC", allow_hyphen_values = true)]
    gamma_rates: Option<String>,

    /// Measurement rotation of qubit B in radians [default: pi/6].
    #[arg(long, value_name = "RAD", allow_negative_numbers = true)]
    theta_b: Option<f64>,

    /// Measurement rotation of qubit C in radians [default: pi/3].
    #[arg(long, value_name = "RAD", allow_negative_numbers = true)]
    theta_c: Option<f64>,

    /// End of the swept time window [default: 5.0].
    #[arg(long, value_name = "TIME", allow_negative_numbers = true)]
    t_max: Option<f64>,

    /// Number of grid points, covering both t=0 and t_max [default: 201].
    #[arg(long, value_name = "N")]
    steps: Option<usize>,

    /// Violation threshold on the expectation magnitude [default: 1.0].
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    threshold: Option<f64>,

    /// CSV destination path; `-` writes to standard output [default: -].
    #[arg(long, value_name = "PATH")]
    output: Option<String>,

    /// Read defaults from a flat `key = value` file.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Skip the table: run the crossing search and print only the
    /// outcome/tau lines.
    #[arg(long)]
    find_tau: bool,
}

/// A fully merged invocation: the sweep description plus the output mode.
#[derive(Debug, Clone)]
pub struct ParsedCli {
    pub config: SweepConfig,
    pub find_tau: bool,
}

/// Values found in the config file; `None` means the key was absent.
#[derive(Debug, Default)]
struct FileValues {
    state: Option<String>,
    amps: Option<String>,
    auto_normalize: Option<bool>,
    gamma_rate: Option<f64>,
    gamma_rates: Option<String>,
    theta_b: Option<f64>,
    theta_c: Option<f64>,
    t_max: Option<f64>,
    steps: Option<usize>,
    threshold: Option<f64>,
    output: Option<String>,
}

fn parse_with_argv0<I, S>(args: I) -> Result<RawArgs, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    let argv = std::iter::once(OsString::from("bnsd-sweep"))
        .chain(args.into_iter().map(Into::into));
    RawArgs::try_parse_from(argv)
}

/// Extracts the `--config` path from the arguments (program name excluded),
/// so the caller can read the file before the full parse.
pub fn config_path<I, S>(args: I) -> Result<Option<PathBuf>, ConfigError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    Ok(parse_with_argv0(args)?.config)
}

/// Parses command-line arguments (program name excluded) plus the optional
/// config-file text into a ready-to-run invocation.
pub fn parse_cli<I, S>(args: I, file_text: Option<&str>) -> Result<ParsedCli, ConfigError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    let raw = parse_with_argv0(args)?;
    let file = match file_text {
        Some(text) => parse_file(text)?,
        None => FileValues::default(),
    };
    merge(raw, file)
}

/// [`parse_cli`] restricted to the sweep description (drops the output-mode
/// flag).
pub fn parse_config<I, S>(args: I, file_text: Option<&str>) -> Result<SweepConfig, ConfigError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    parse_cli(args, file_text).map(|parsed| parsed.config)
}

/// Parses one complex literal: `re`, `imi`, or `re+imi` (also `re-imi`),
/// where both parts are ordinary decimal literals with optional exponents
/// and the bare imaginary unit `i`, `+i`, `-i` is understood.
pub fn parse_complex(text: &str) -> Result<Complex64, ConfigError> {
    let bad = |reason: String| ConfigError::Value { what: "complex literal", reason };
    let real_part = |s: &str| -> Result<f64, ConfigError> {
        let v: f64 = s
            .parse()
            .map_err(|e| bad(format!("{text:?}: cannot parse {s:?}: {e}")))?;
        if !v.is_finite() {
            return Err(bad(format!("{text:?}: component {s:?} is not finite")));
        }
        Ok(v)
    };

    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(bad("empty literal".to_string()));
    }
    let Some(body) = trimmed.strip_suffix(['i', 'I']) else {
        // Purely real literal.
        return Ok(Complex64::new(real_part(trimmed)?, 0.0));
    };

    // Split the body at the sign that separates real and imaginary parts: the
    // last '+'/'-' that is neither leading nor part of an exponent.
    let split = body
        .char_indices()
        .rev()
        .find(|&(idx, ch)| {
            (ch == '+' || ch == '-')
                && idx > 0
                && !matches!(body.as_bytes()[idx - 1], b'e' | b'E')
        })
        .map(|(idx, _)| idx);

    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() { 0.0 } else { real_part(re_str)? };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => real_part(s)?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_triple<'a>(
    text: &'a str,
    what: &'static str,
) -> Result<[&'a str; 3], ConfigError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match <[&str; 3]>::try_from(parts) {
        Ok(parts) => Ok(parts),
        Err(parts) => Err(ConfigError::Value {
            what,
            reason: format!("expected 3 comma-separated values, got {}", parts.len()),
        }),
    }
}

fn amps_from_text(text: &str, auto_normalize: bool) -> Result<WAmplitudes, ConfigError> {
    let [s1, s2, s4] = parse_triple(text, "amplitudes")?;
    let (a1, a2, a4) = (parse_complex(s1)?, parse_complex(s2)?, parse_complex(s4)?);
    let amps = if auto_normalize {
        WAmplitudes::normalized(a1, a2, a4)?
    } else {
        WAmplitudes::new(a1, a2, a4)?
    };
    Ok(amps)
}

fn preset(name: &str) -> Result<WAmplitudes, ConfigError> {
    match name {
        "w-standard" => Ok(WAmplitudes::standard_w()),
        other => Err(ConfigError::Value {
            what: "state preset",
            reason: format!("unknown preset {other:?}; available presets: w-standard"),
        }),
    }
}

fn rates_from_text(text: &str) -> Result<DephasingModel, ConfigError> {
    let [sa, sb, sc] = parse_triple(text, "gamma rates")?;
    let rate = |s: &str| -> Result<f64, ConfigError> {
        s.parse::<f64>().map_err(|e| ConfigError::Value {
            what: "gamma rates",
            reason: format!("cannot parse {s:?}: {e}"),
        })
    };
    DephasingModel::new(rate(sa)?, rate(sb)?, rate(sc)?).map_err(|e| ConfigError::Value {
        what: "gamma rates",
        reason: e.to_string(),
    })
}

fn equal_rates(rate: f64) -> Result<DephasingModel, ConfigError> {
    DephasingModel::equal(rate).map_err(|e| ConfigError::Value {
        what: "gamma rate",
        reason: e.to_string(),
    })
}

fn parse_file(text: &str) -> Result<FileValues, ConfigError> {
    let mut values = FileValues::default();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let file_err = |reason: String| ConfigError::File { line: line_no, reason };

        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(file_err(format!("expected `key = value`, got {line:?}")));
        };
        let key = key.trim();
        let value = value.trim();

        fn set<T>(
            slot: &mut Option<T>,
            key: &str,
            value: T,
            file_err: &impl Fn(String) -> ConfigError,
        ) -> Result<(), ConfigError> {
            if slot.is_some() {
                return Err(file_err(format!("duplicate key `{key}`")));
            }
            *slot = Some(value);
            Ok(())
        }
        let real = |value: &str| -> Result<f64, ConfigError> {
            value
                .parse()
                .map_err(|e| file_err(format!("cannot parse `{key}` value {value:?}: {e}")))
        };

        match key {
            "state" => set(&mut values.state, key, value.to_string(), &file_err)?,
            "amps" => set(&mut values.amps, key, value.to_string(), &file_err)?,
            "auto_normalize" => {
                let flag = match value {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(file_err(format!(
                            "cannot parse `auto_normalize` value {other:?}: expected true or false"
                        )))
                    }
                };
                set(&mut values.auto_normalize, key, flag, &file_err)?;
            }
            "gamma_rate" => {
                let v = real(value)?;
                set(&mut values.gamma_rate, key, v, &file_err)?;
            }
            "gamma_rates" => set(&mut values.gamma_rates, key, value.to_string(), &file_err)?,
            "theta_b" => {
                let v = real(value)?;
                set(&mut values.theta_b, key, v, &file_err)?;
            }
            "theta_c" => {
                let v = real(value)?;
                set(&mut values.theta_c, key, v, &file_err)?;
            }
            "t_max" => {
                let v = real(value)?;
                set(&mut values.t_max, key, v, &file_err)?;
            }
            "steps" => {
                let v = value.parse::<usize>().map_err(|e| {
                    file_err(format!("cannot parse `steps` value {value:?}: {e}"))
                })?;
                set(&mut values.steps, key, v, &file_err)?;
            }
            "threshold" => {
                let v = real(value)?;
                set(&mut values.threshold, key, v, &file_err)?;
            }
            "output" => set(&mut values.output, key, value.to_string(), &file_err)?,
            other => return Err(file_err(format!("unknown key `{other}`"))),
        }
    }
    Ok(values)
}

fn merge(raw: RawArgs, file: FileValues) -> Result<ParsedCli, ConfigError> {
    let auto_normalize = if raw.no_auto_normalize {
        false
    } else {
        file.auto_normalize.unwrap_or(true)
    };

    let amps = match (raw.state, raw.amps) {
        (Some(_), Some(_)) => return Err(ConfigError::ConflictingStateSources),
        (Some(name), None) => preset(&name)?,
        (None, Some(text)) => amps_from_text(&text, auto_normalize)?,
        (None, None) => match (file.state, file.amps) {
            (Some(_), Some(_)) => return Err(ConfigError::ConflictingStateSources),
            (Some(name), None) => preset(&name)?,
            (None, Some(text)) => amps_from_text(&text, auto_normalize)?,
            (None, None) => return Err(ConfigError::MissingState),
        },
    };

    let model = match (raw.gamma_rate, raw.gamma_rates) {
        (Some(_), Some(_)) => return Err(ConfigError::ConflictingRateSources),
        (Some(rate), None) => equal_rates(rate)?,
        (None, Some(text)) => rates_from_text(&text)?,
        (None, None) => match (file.gamma_rate, file.gamma_rates) {
            (Some(_), Some(_)) => return Err(ConfigError::ConflictingRateSources),
            (Some(rate), None) => equal_rates(rate)?,
            (None, Some(text)) => rates_from_text(&text)?,
            (None, None) => equal_rates(1.0)?,
        },
    };

    let theta_b = raw.theta_b.or(file.theta_b).unwrap_or(FRAC_PI_6);
    let theta_c = raw.theta_c.or(file.theta_c).unwrap_or(FRAC_PI_3);
    let settings = BellSettings::new(0.0, theta_b, theta_c).map_err(|e| ConfigError::Value {
        what: "measurement settings",
        reason: e.to_string(),
    })?;

    let config = SweepConfig {
        amps,
        model,
        settings,
        t_max: raw.t_max.or(file.t_max).unwrap_or(5.0),
        steps: raw.steps.or(file.steps).unwrap_or(201),
        threshold: raw.threshold.or(file.threshold).unwrap_or(1.0),
        output: raw.output.or(file.output).unwrap_or_else(|| "-".to_string()),
    };
    Ok(ParsedCli { config, find_tau: raw.find_tau })
}
