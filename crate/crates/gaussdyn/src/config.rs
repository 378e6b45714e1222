//! Flat `key = value` configuration with dotted section prefixes.
//!
//! ```text
//! # comment
//! oscillator.m = 1
//! oscillator.omega = 1
//! environment.kind = gibbs        # general | symmetric | gibbs
//! environment.lambda = 0.2
//! environment.d_xx = 0.11
//! environment.d_xpy = 0.1
//! environment.positivity = full   # full | minors
//! initial.preset = vacuum         # vacuum | fig2 | fig3, or initial.sigma = 10 values
//! time.t_max = 100
//! time.n_samples = 2000
//! sweep.x.param = d_xpy         # or sweep.param for a 1-D sweep
//! sweep.x.lo = 0
//! sweep.x.hi = 1.2
//! sweep.x.n = 200
//! # sweep.y.* adds a second axis
//! output.path = out.csv
//! run.allow_unphysical = false
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use gaussdyn_core::events::{DEFAULT_HORIZON_DECAY_TIMES, DEFAULT_N_SAMPLES};
use gaussdyn_core::{
    gibbs_environment, symmetric_environment, CovarianceMatrix, EnvironmentSpec, OscillatorSpec,
    Positivity, DEFAULT_TOL,
};

use crate::error::{CliError, Result};

/// Parsed but uninterpreted key/value pairs, in key order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues(BTreeMap<String, String>);

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(CliError::Config(format!("line {}: empty key", lineno + 1)));
            }
            if map.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        Ok(Self(map))
    }

    /// Parses a single `key=value` override.
    pub fn parse_assignment(s: &str) -> Result<(String, String)> {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("expected key=value, got `{s}`")))?;
        Ok((k.trim().to_string(), v.trim().to_string()))
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.0.insert(key.into(), value.into());
    }

    pub fn take(&mut self, key: &str) -> Option<String> {
        self.0.remove(key)
    }

    pub fn take_f64(&mut self, key: &str) -> Result<Option<f64>> {
        self.take(key)
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| CliError::Config(format!("`{key}`: not a finite number: `{v}`")))
            })
            .transpose()
    }

    pub fn take_usize(&mut self, key: &str) -> Result<Option<usize>> {
        self.take(key)
            .map(|v| {
                v.parse::<usize>().map_err(|_| {
                    CliError::Config(format!("`{key}`: not a non-negative integer: `{v}`"))
                })
            })
            .transpose()
    }

    pub fn take_bool(&mut self, key: &str) -> Result<Option<bool>> {
        self.take(key)
            .map(|v| match v.as_str() {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(CliError::Config(format!("`{key}`: not a boolean: `{v}`"))),
            })
            .transpose()
    }

    /// Errors if any key was not consumed.
    pub fn finish(self) -> Result<()> {
        match self.0.keys().next() {
            Some(k) => Err(CliError::Config(format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }
}

/// How the environment coefficients are specified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvKind {
    /// All eleven fields given independently.
    General,
    /// `lambda, d_xx, d_xpx, d_pxpx, d_xy, d_xpy, d_pxpy`; the second
    /// oscillator mirrors the first.
    Symmetric,
    /// `lambda, d_xx, d_xy, d_xpy`; momentum coefficients follow from the
    /// thermal-asymptote relations.
    Gibbs,
}

impl EnvKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(EnvKind::General),
            "symmetric" => Ok(EnvKind::Symmetric),
            "gibbs" => Ok(EnvKind::Gibbs),
            _ => Err(CliError::Config(format!(
                "environment.kind must be general, symmetric or gibbs, got `{s}`"
            ))),
        }
    }

    pub fn params(self) -> &'static [&'static str] {
        match self {
            EnvKind::General => &EnvironmentSpec::FIELDS,
            EnvKind::Symmetric => &[
                "lambda", "d_xx", "d_xpx", "d_pxpx", "d_xy", "d_xpy", "d_pxpy",
            ],
            EnvKind::Gibbs => &["lambda", "d_xx", "d_xy", "d_xpy"],
        }
    }
}

/// Environment inputs before the kind-specific relations are applied.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvironmentInput {
    pub kind: EnvKind,
    values: BTreeMap<&'static str, f64>,
}

impl EnvironmentInput {
    pub fn new(kind: EnvKind) -> Self {
        Self {
            kind,
            values: kind.params().iter().map(|&p| (p, 0.0)).collect(),
        }
    }

    pub fn get(&self, param: &str) -> Option<f64> {
        self.values.get(param).copied()
    }

    pub fn set(&mut self, param: &str, value: f64) -> Result<()> {
        match self.values.get_mut(param) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(CliError::Config(format!(
                "`{param}` is not a parameter of a {:?} environment (expected one of {})",
                self.kind,
                self.kind.params().join(", ")
            ))),
        }
    }

    pub fn build(&self, osc: &OscillatorSpec) -> EnvironmentSpec {
        let v = |p: &str| self.values.get(p).copied().unwrap_or(0.0);
        match self.kind {
            EnvKind::General => {
                let mut env = EnvironmentSpec::default();
                for (name, value) in &self.values {
                    *env.field_mut(name).expect("known field") = *value;
                }
                env
            }
            EnvKind::Symmetric => symmetric_environment(
                v("lambda"),
                v("d_xx"),
                v("d_xpx"),
                v("d_pxpx"),
                v("d_xy"),
                v("d_xpy"),
                v("d_pxpy"),
            ),
            EnvKind::Gibbs => gibbs_environment(osc, v("lambda"), v("d_xx"), v("d_xy"), v("d_xpy")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Preset(String),
    Upper([f64; 10]),
}

impl InitialState {
    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        match self {
            InitialState::Upper(u) => Ok(CovarianceMatrix::from_upper(*u)),
            InitialState::Preset(name) => preset_covariance(name),
        }
    }
}

pub fn preset_covariance(name: &str) -> Result<CovarianceMatrix> {
    match name {
        "vacuum" => Ok(CovarianceMatrix::vacuum()),
        "fig2" | "separable_product" => Ok(CovarianceMatrix::separable_product()),
        "fig3" | "correlated_product" => Ok(CovarianceMatrix::correlated_product()),
        _ => Err(CliError::Config(format!(
            "unknown initial preset `{name}` (vacuum, fig2, fig3)"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    /// Defaults to `20 / lambda`.
    pub t_max: Option<f64>,
    pub n_samples: usize,
}

impl TimeGrid {
    pub fn t_max_for(&self, lambda: f64) -> f64 {
        self.t_max.unwrap_or(DEFAULT_HORIZON_DECAY_TIMES / lambda)
    }
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_max: None,
            n_samples: DEFAULT_N_SAMPLES,
        }
    }
}

/// Parameters a sweep may vary, besides the environment parameters of the
/// configured kind.
pub const OSCILLATOR_PARAMS: [&str; 2] = ["m", "omega"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive; `[lo]` for `n = 1`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub oscillator: OscillatorSpec,
    pub environment: EnvironmentInput,
    pub positivity: Positivity,
    pub initial: InitialState,
    pub time: Option<TimeGrid>,
    pub sweep: Vec<SweepAxis>,
    pub output: Option<PathBuf>,
    pub allow_unphysical: bool,
    pub tol: f64,
}

impl RunConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut kv = KeyValues::parse(text)?;
        let cfg = Self::from_kv(&mut kv)?;
        kv.finish()?;
        Ok(cfg)
    }

    /// Consumes every key this type understands; leaves the rest in `kv`.
    pub fn from_kv(kv: &mut KeyValues) -> Result<Self> {
        let m = kv.take_f64("oscillator.m")?.unwrap_or(1.0);
        let omega = kv.take_f64("oscillator.omega")?.unwrap_or(1.0);
        let oscillator =
            OscillatorSpec::new(m, omega).map_err(|e| CliError::Config(e.to_string()))?;

        let kind = kv
            .take("environment.kind")
            .map(|k| EnvKind::parse(&k))
            .transpose()?
            .unwrap_or(EnvKind::General);
        let mut environment = EnvironmentInput::new(kind);
        for &param in EnvironmentSpec::FIELDS.iter() {
            let key = format!("environment.{param}");
            if let Some(v) = kv.take_f64(&key)? {
                environment.set(param, v).map_err(|_| {
                    CliError::Config(format!("`{key}` is not used by kind {kind:?}"))
                })?;
            }
        }
        let positivity = match kv.take("environment.positivity").as_deref() {
            None | Some("full") => Positivity::Full,
            Some("minors") => Positivity::Minors,
            Some(other) => {
                return Err(CliError::Config(format!(
                    "environment.positivity must be full or minors, got `{other}`"
                )))
            }
        };

        let preset = kv.take("initial.preset");
        let sigma = kv.take("initial.sigma");
        let initial = match (preset, sigma) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "give either initial.preset or initial.sigma, not both".into(),
                ))
            }
            (Some(p), None) => {
                preset_covariance(&p)?;
                InitialState::Preset(p)
            }
            (None, Some(s)) => InitialState::Upper(parse_upper(&s)?),
            (None, None) => InitialState::Preset("vacuum".into()),
        };

        let t_max = kv.take_f64("time.t_max")?;
        let n_samples = kv.take_usize("time.n_samples")?;
        let time = if t_max.is_some() || n_samples.is_some() {
            let grid = TimeGrid {
                t_max,
                n_samples: n_samples.unwrap_or(DEFAULT_N_SAMPLES),
            };
            if grid.t_max.is_some_and(|t| t <= 0.0) || grid.n_samples < 2 {
                return Err(CliError::Config(
                    "time.t_max must be > 0 and time.n_samples >= 2".into(),
                ));
            }
            Some(grid)
        } else {
            None
        };

        let short = take_axis(kv, "sweep")?;
        let mut x = take_axis(kv, "sweep.x")?;
        if short.is_some() {
            if x.is_some() {
                return Err(CliError::Config(
                    "give either sweep.param or sweep.x.param".into(),
                ));
            }
            x = short;
        }
        let y = take_axis(kv, "sweep.y")?;
        let sweep = match (x, y) {
            (None, None) => Vec::new(),
            (Some(x), None) => vec![x],
            (Some(x), Some(y)) => vec![x, y],
            (None, Some(_)) => return Err(CliError::Config("sweep.y requires sweep.x".into())),
        };
        for a in &sweep {
            let allowed = OSCILLATOR_PARAMS.contains(&a.param.as_str())
                || environment.kind.params().contains(&a.param.as_str());
            if !allowed {
                return Err(CliError::Config(format!(
                    "`{}` cannot be swept for a {:?} environment (allowed: m, omega, {})",
                    a.param,
                    environment.kind,
                    environment.kind.params().join(", ")
                )));
            }
        }
        if sweep.len() == 2 && sweep[0].param == sweep[1].param {
            return Err(CliError::Config(
                "sweep.x and sweep.y vary the same parameter".into(),
            ));
        }

        let output = kv.take("output.path").map(PathBuf::from);
        match kv.take("output.format").as_deref() {
            None | Some("csv") => {}
            Some(other) => {
                return Err(CliError::Config(format!(
                    "output.format must be csv, got `{other}`"
                )))
            }
        }
        let allow_unphysical = kv.take_bool("run.allow_unphysical")?.unwrap_or(false);
        let tol = kv.take_f64("validation.tol")?.unwrap_or(DEFAULT_TOL);
        if tol < 0.0 {
            return Err(CliError::Config("validation.tol must be >= 0".into()));
        }

        Ok(Self {
            oscillator,
            environment,
            positivity,
            initial,
            time,
            sweep,
            output,
            allow_unphysical,
            tol,
        })
    }

    pub fn environment_spec(&self) -> EnvironmentSpec {
        self.environment.build(&self.oscillator)
    }

    /// Copy with one swept parameter set.
    pub fn with_param(&self, param: &str, value: f64) -> Result<Self> {
        let mut out = self.clone();
        match param {
            "m" | "omega" => {
                let (m, omega) = if param == "m" {
                    (value, out.oscillator.omega)
                } else {
                    (out.oscillator.m, value)
                };
                // Non-positive values are kept and surface as invalid rows.
                out.oscillator = OscillatorSpec { m, omega };
            }
            _ => out.environment.set(param, value)?,
        }
        Ok(out)
    }
}

fn take_axis(kv: &mut KeyValues, prefix: &str) -> Result<Option<SweepAxis>> {
    let param = kv.take(&format!("{prefix}.param"));
    let lo = kv.take_f64(&format!("{prefix}.lo"))?;
    let hi = kv.take_f64(&format!("{prefix}.hi"))?;
    let n = kv.take_usize(&format!("{prefix}.n"))?;
    match (param, lo, hi, n) {
        (None, None, None, None) => Ok(None),
        (Some(param), Some(lo), Some(hi), Some(n)) => Ok(Some(SweepAxis { param, lo, hi, n })),
        _ => Err(CliError::Config(format!(
            "{prefix} needs all of param, lo, hi, n"
        ))),
    }
}

fn parse_upper(s: &str) -> Result<[f64; 10]> {
    let values: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Config(format!("initial.sigma: cannot parse `{s}`")))?;
    let arr: [f64; 10] = values.try_into().map_err(|v: Vec<f64>| {
        CliError::Config(format!(
            "initial.sigma needs 10 upper-triangle entries, got {}",
            v.len()
        ))
    })?;
    if arr.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config(
            "initial.sigma has non-finite entries".into(),
        ));
    }
    Ok(arr)
}
