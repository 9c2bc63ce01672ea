//! Run configuration: a flat `key = value` document plus CLI overrides.
//!
//! The document format is one assignment per line, `#` starts a comment,
//! blank lines are ignored. Recognized keys:
//!
//!   scenario           undriven | driven | compare | sweep | w-times
//!   chi_a chi_b chi_c  Kerr constants (default 30)
//!   epsilon            inter-mode coupling (default pi/30; complex allowed)
//!   alpha beta gamma   drive amplitudes (complex allowed; scenario defaults)
//!   cutoff             per-mode Fock levels, 2..=16 (default 8)
//!   initial_n/m/l      initial basis state (default |001>, driven |000>)
//!   t_max dt           sampling window and spacing (default 60, 0.05)
//!   n_times            how many W times the w-times scenario prints
//!   sweep_chi          comma-separated Kerr values for the sweep scenario
//!   out                output CSV path
//!
//! Complex values accept `1.5`, `-2e-3`, `1+0.5i`, `-i`, `0.3i`.

use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockIndex;
use crate::hamiltonian::SystemParams;

/// Largest cutoff the dense spectral path handles comfortably.
pub const MAX_CUTOFF: usize = 16;

const MAX_GRID_POINTS: f64 = 2e7;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Scenario {
    /// Exchange-only evolution from a single-photon state.
    Undriven,
    /// Evolution with external drives from the vacuum.
    Driven,
    /// Qubit-subspace model against the full evolution on one grid.
    Compare,
    /// Leakage statistics across a list of Kerr constants.
    Sweep,
    /// The discrete times at which W states appear.
    WTimes,
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undriven" => Ok(Self::Undriven),
            "driven" => Ok(Self::Driven),
            "compare" => Ok(Self::Compare),
            "sweep" => Ok(Self::Sweep),
            "w-times" => Ok(Self::WTimes),
            other => Err(Error::Config {
                key: "scenario".into(),
                message: format!(
                    "unknown scenario '{other}' (expected undriven, driven, compare, sweep, or w-times)"
                ),
            }),
        }
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Self::Undriven => "undriven",
            Self::Driven => "driven",
            Self::Compare => "compare",
            Self::Sweep => "sweep",
            Self::WTimes => "w-times",
        };
        write!(f, "{name}")
    }
}

/// A fully resolved run: every default applied, every invariant checked.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub chi_a: f64,
    pub chi_b: f64,
    pub chi_c: f64,
    pub epsilon: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub cutoff: usize,
    pub initial: FockIndex,
    pub t_max: f64,
    pub dt: f64,
    pub n_times: usize,
    pub sweep_chi: Vec<f64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults for a scenario, as if parsing an empty document.
    pub fn default_for(scenario: Scenario) -> Self {
        let overrides = Overrides {
            scenario: Some(scenario),
            ..Overrides::default()
        };
        parse_config_with("", &overrides).expect("defaults are valid")
    }

    pub fn params(&self) -> SystemParams {
        SystemParams {
            chi_a: self.chi_a,
            chi_b: self.chi_b,
            chi_c: self.chi_c,
            epsilon: self.epsilon,
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            cutoff: self.cutoff,
        }
    }

    pub fn hilbert_dim(&self) -> usize {
        self.cutoff * self.cutoff * self.cutoff
    }

    pub fn is_driven(&self) -> bool {
        self.alpha != Complex64::ZERO
            || self.beta != Complex64::ZERO
            || self.gamma != Complex64::ZERO
    }

    /// Sampling grid 0, dt, 2 dt, ..., up to t_max.
    pub fn time_grid(&self) -> Vec<f64> {
        let n = (self.t_max / self.dt + 1e-9).floor() as usize;
        (0..=n).map(|k| k as f64 * self.dt).collect()
    }
}

/// CLI flag values; every set field wins over the config document.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub scenario: Option<Scenario>,
    pub out: Option<PathBuf>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub epsilon: Option<f64>,
    /// Sets all three Kerr constants at once.
    pub chi: Option<f64>,
    pub cutoff: Option<usize>,
    pub n_times: Option<usize>,
}

/// Parse a config document with no overrides.
pub fn parse_config(source: &str) -> Result<RunConfig> {
    parse_config_with(source, &Overrides::default())
}

/// Parse a config document, apply CLI overrides, resolve scenario defaults,
/// and validate every invariant. Errors name the offending key.
pub fn parse_config_with(source: &str, overrides: &Overrides) -> Result<RunConfig> {
    let mut raw = RawConfig::default();
    for (lineno, line) in source.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config {
                key: format!("line {}", lineno + 1),
                message: format!("expected 'key = value', got '{line}'"),
            });
        };
        raw.set(key.trim(), value.trim())?;
    }
    raw.apply(overrides);
    raw.resolve()
}

#[derive(Default)]
struct RawConfig {
    scenario: Option<Scenario>,
    chi_a: Option<f64>,
    chi_b: Option<f64>,
    chi_c: Option<f64>,
    epsilon: Option<Complex64>,
    alpha: Option<Complex64>,
    beta: Option<Complex64>,
    gamma: Option<Complex64>,
    cutoff: Option<usize>,
    initial_n: Option<usize>,
    initial_m: Option<usize>,
    initial_l: Option<usize>,
    t_max: Option<f64>,
    dt: Option<f64>,
    n_times: Option<usize>,
    sweep_chi: Option<Vec<f64>>,
    out: Option<PathBuf>,
}

fn config_err(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        message: message.into(),
    }
}

fn parse_real(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| config_err(key, format!("expected a number, got '{value}'")))
}

fn parse_count(key: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| config_err(key, format!("expected a non-negative integer, got '{value}'")))
}

fn parse_complex_value(key: &str, value: &str) -> Result<Complex64> {
    parse_complex(value).map_err(|msg| config_err(key, msg))
}

impl RawConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if value.is_empty() {
            return Err(config_err(key, "empty value"));
        }
        macro_rules! store {
            ($field:ident, $parsed:expr) => {{
                if self.$field.is_some() {
                    return Err(config_err(key, "duplicate key"));
                }
                self.$field = Some($parsed);
            }};
        }
        match key {
            "scenario" => store!(scenario, value.parse()?),
            "chi_a" => store!(chi_a, parse_real(key, value)?),
            "chi_b" => store!(chi_b, parse_real(key, value)?),
            "chi_c" => store!(chi_c, parse_real(key, value)?),
            "epsilon" => store!(epsilon, parse_complex_value(key, value)?),
            "alpha" => store!(alpha, parse_complex_value(key, value)?),
            "beta" => store!(beta, parse_complex_value(key, value)?),
            "gamma" => store!(gamma, parse_complex_value(key, value)?),
            "cutoff" => store!(cutoff, parse_count(key, value)?),
            "initial_n" => store!(initial_n, parse_count(key, value)?),
            "initial_m" => store!(initial_m, parse_count(key, value)?),
            "initial_l" => store!(initial_l, parse_count(key, value)?),
            "t_max" => store!(t_max, parse_real(key, value)?),
            "dt" => store!(dt, parse_real(key, value)?),
            "n_times" => store!(n_times, parse_count(key, value)?),
            "sweep_chi" => {
                let values = value
                    .split(',')
                    .map(|tok| parse_real(key, tok.trim()))
                    .collect::<Result<Vec<f64>>>()?;
                store!(sweep_chi, values)
            }
            "out" => store!(out, PathBuf::from(value)),
            other => return Err(config_err(other, "unknown key")),
        }
        Ok(())
    }

    fn apply(&mut self, overrides: &Overrides) {
        if let Some(s) = overrides.scenario {
            self.scenario = Some(s);
        }
        if let Some(ref p) = overrides.out {
            self.out = Some(p.clone());
        }
        if let Some(t) = overrides.t_max {
            self.t_max = Some(t);
        }
        if let Some(dt) = overrides.dt {
            self.dt = Some(dt);
        }
        if let Some(e) = overrides.epsilon {
            self.epsilon = Some(Complex64::new(e, 0.0));
        }
        if let Some(chi) = overrides.chi {
            self.chi_a = Some(chi);
            self.chi_b = Some(chi);
            self.chi_c = Some(chi);
        }
        if let Some(d) = overrides.cutoff {
            self.cutoff = Some(d);
        }
        if let Some(n) = overrides.n_times {
            self.n_times = Some(n);
        }
    }

    fn resolve(self) -> Result<RunConfig> {
        let scenario = self.scenario.unwrap_or(Scenario::Undriven);

        let finite = |key: &str, x: f64| -> Result<f64> {
            if x.is_finite() {
                Ok(x)
            } else {
                Err(config_err(key, "value must be finite"))
            }
        };
        let finite_c = |key: &str, z: Complex64| -> Result<Complex64> {
            if z.re.is_finite() && z.im.is_finite() {
                Ok(z)
            } else {
                Err(config_err(key, "value must be finite"))
            }
        };

        let chi_a = finite("chi_a", self.chi_a.unwrap_or(30.0))?;
        let chi_b = finite("chi_b", self.chi_b.unwrap_or(30.0))?;
        let chi_c = finite("chi_c", self.chi_c.unwrap_or(30.0))?;
        let epsilon = finite_c(
            "epsilon",
            self.epsilon
                .unwrap_or(Complex64::new(std::f64::consts::PI / 30.0, 0.0)),
        )?;

        let cutoff = self.cutoff.unwrap_or(8);
        if !(2..=MAX_CUTOFF).contains(&cutoff) {
            return Err(config_err(
                "cutoff",
                format!("must be between 2 and {MAX_CUTOFF}, got {cutoff}"),
            ));
        }

        // Drives: the driven and sweep scenarios default to the symmetric
        // drive alpha = beta = gamma = epsilon; the others to zero.
        let drive_default = match scenario {
            Scenario::Driven | Scenario::Sweep => epsilon,
            _ => Complex64::ZERO,
        };
        let alpha = finite_c("alpha", self.alpha.unwrap_or(drive_default))?;
        let beta = finite_c("beta", self.beta.unwrap_or(drive_default))?;
        let gamma = finite_c("gamma", self.gamma.unwrap_or(drive_default))?;
        if scenario == Scenario::Undriven {
            for (key, z) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
                if z != Complex64::ZERO {
                    return Err(config_err(key, "must be zero in the undriven scenario"));
                }
            }
        }

        let driven = alpha != Complex64::ZERO
            || beta != Complex64::ZERO
            || gamma != Complex64::ZERO;
        let default_initial = if driven { (0, 0, 0) } else { (0, 0, 1) };
        let initial = FockIndex::new(
            self.initial_n.unwrap_or(default_initial.0),
            self.initial_m.unwrap_or(default_initial.1),
            self.initial_l.unwrap_or(default_initial.2),
        );
        for (key, occ) in [
            ("initial_n", initial.n),
            ("initial_m", initial.m),
            ("initial_l", initial.l),
        ] {
            if occ >= cutoff {
                return Err(config_err(
                    key,
                    format!("occupation {occ} outside cutoff {cutoff}"),
                ));
            }
            if scenario == Scenario::Compare && occ > 1 {
                return Err(config_err(
                    key,
                    "the compare scenario needs an initial state inside {0,1}^3",
                ));
            }
        }

        let t_max = finite("t_max", self.t_max.unwrap_or(60.0))?;
        if t_max < 0.0 {
            return Err(config_err("t_max", format!("must be >= 0, got {t_max}")));
        }
        let dt = finite("dt", self.dt.unwrap_or(0.05))?;
        if dt <= 0.0 {
            return Err(config_err("dt", format!("must be > 0, got {dt}")));
        }
        if t_max / dt > MAX_GRID_POINTS {
            return Err(config_err(
                "dt",
                format!("grid would exceed {MAX_GRID_POINTS:.0} points"),
            ));
        }

        let n_times = self.n_times.unwrap_or(6);
        if !(1..=100_000).contains(&n_times) {
            return Err(config_err(
                "n_times",
                format!("must be between 1 and 100000, got {n_times}"),
            ));
        }
        if scenario == Scenario::WTimes && (epsilon.im != 0.0 || epsilon.re <= 0.0) {
            return Err(config_err(
                "epsilon",
                "the w-times scenario needs a real positive coupling",
            ));
        }

        let sweep_chi = self.sweep_chi.unwrap_or_else(|| vec![30.0, 100.0, 300.0]);
        if sweep_chi.is_empty() {
            return Err(config_err("sweep_chi", "needs at least one value"));
        }
        for &v in &sweep_chi {
            finite("sweep_chi", v)?;
        }

        Ok(RunConfig {
            scenario,
            chi_a,
            chi_b,
            chi_c,
            epsilon,
            alpha,
            beta,
            gamma,
            cutoff,
            initial,
            t_max,
            dt,
            n_times,
            sweep_chi,
            out: self.out,
        })
    }
}

/// Parse a real or complex literal: `2`, `-1.5e-3`, `1+2i`, `-0.5i`, `i`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty value".into());
    }
    if !(t.ends_with('i') || t.ends_with('I')) {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("invalid number '{t}'"));
    }

    let body = &t[..t.len() - 1];
    // split "a+bi" at the last sign that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if bytes[k] == b'+' || bytes[k] == b'-' {
            let prev = bytes[k - 1];
            if prev != b'e' && prev != b'E' {
                split = Some(k);
                break;
            }
        }
    }
    match split {
        Some(k) => {
            let re = body[..k]
                .parse::<f64>()
                .map_err(|_| format!("invalid real part '{}'", &body[..k]))?;
            let im = parse_imaginary_coeff(&body[k..])?;
            Ok(Complex64::new(re, im))
        }
        None => Ok(Complex64::new(0.0, parse_imaginary_coeff(body)?)),
    }
}

fn parse_imaginary_coeff(s: &str) -> std::result::Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => s
            .parse::<f64>()
            .map_err(|_| format!("invalid imaginary part '{s}'")),
    }
}
