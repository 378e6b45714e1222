//! Figure presets: the asymptotic negativity surface (`fig1`) and the
//! time traces for a separable (`fig2`) and an entangled (`fig3`) initial state.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use gaussdyn_core::model::Constraint;
use gaussdyn_core::{
    gibbs_environment, symmetric_environment, validate_environment, CovarianceMatrix, Dynamics,
    EntanglementTrace, EnvironmentSpec, EventReport, OscillatorSpec, Positivity, DEFAULT_TOL,
};

use crate::analysis::{asymptote, trajectory};
use crate::config::{linspace, preset_covariance, InitialState, KeyValues, RunConfig, TimeGrid};
use crate::csv::CsvWriter;
use crate::error::{CliError, Result};
use crate::format::{fmt_flag, fmt_g, fmt_opt, join_cell};
use crate::run::{gate_environment, gate_initial};

pub const FIG1_HEADER: [&str; 6] = [
    "D",
    "d",
    "E_infinity",
    "S_infinity",
    "physical",
    "completely_positive",
];
pub const TRACE_HEADER: [&str; 6] = ["t", "d", "S", "E", "nu_tilde_minus", "entangled"];
pub const EVENTS_HEADER: [&str; 9] = [
    "d",
    "cauchy_schwarz",
    "completely_positive",
    "classification",
    "n_crossings",
    "crossing_times",
    "asymptotic_S",
    "asymptotic_verdict",
    "warnings",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
}

impl Scenario {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "fig1" => Ok(Scenario::Fig1),
            "fig2" => Ok(Scenario::Fig2),
            "fig3" => Ok(Scenario::Fig3),
            _ => Err(CliError::Config(format!(
                "unknown scenario `{name}` (fig1, fig2, fig3)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v, n: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

/// Fully resolved scenario parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub oscillator: OscillatorSpec,
    pub lambda: f64,
    /// Diagonal diffusion `D` for fig2/fig3; a grid axis for fig1.
    pub big_d: Axis,
    pub small_d: Axis,
    pub time: TimeGrid,
    pub initial: InitialState,
    pub allow_unphysical: bool,
    pub tol: f64,
}

impl ScenarioConfig {
    pub fn preset(scenario: Scenario) -> Self {
        match scenario {
            Scenario::Fig1 => Self {
                scenario,
                oscillator: OscillatorSpec::unit(),
                lambda: 0.2,
                big_d: Axis {
                    lo: 0.1,
                    hi: 1.0,
                    n: 91,
                },
                small_d: Axis {
                    lo: 0.0,
                    hi: 1.0,
                    n: 101,
                },
                time: TimeGrid::default(),
                initial: InitialState::Preset("vacuum".into()),
                allow_unphysical: false,
                tol: DEFAULT_TOL,
            },
            Scenario::Fig2 | Scenario::Fig3 => Self {
                scenario,
                oscillator: OscillatorSpec::unit(),
                lambda: 0.5,
                big_d: Axis::point(0.4),
                small_d: Axis {
                    lo: -0.4,
                    hi: 0.4,
                    n: 41,
                },
                time: TimeGrid::default(),
                initial: InitialState::Preset(
                    if scenario == Scenario::Fig2 {
                        "fig2"
                    } else {
                        "fig3"
                    }
                    .into(),
                ),
                allow_unphysical: scenario == Scenario::Fig3,
                tol: DEFAULT_TOL,
            },
        }
    }

    /// Applies `--set key=value` overrides.
    ///
    /// Shared keys: `oscillator.m`, `oscillator.omega`, `environment.lambda`,
    /// `validation.tol`, `d` (single value) or `grid.d.{lo,hi,n}`.
    /// fig1 adds `D` or `grid.D.{lo,hi,n}`; fig2/fig3 add `D`, `time.t_max`,
    /// `time.n_samples`, `initial.preset`, `initial.sigma`, `run.allow_unphysical`.
    pub fn with_overrides(scenario: Scenario, overrides: &[(String, String)]) -> Result<Self> {
        let mut kv = KeyValues::default();
        for (k, v) in overrides {
            kv.set(k.clone(), v.clone());
        }
        let mut cfg = Self::preset(scenario);
        let m = kv.take_f64("oscillator.m")?.unwrap_or(cfg.oscillator.m);
        let omega = kv
            .take_f64("oscillator.omega")?
            .unwrap_or(cfg.oscillator.omega);
        cfg.oscillator =
            OscillatorSpec::new(m, omega).map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(l) = kv.take_f64("environment.lambda")? {
            cfg.lambda = l;
        }
        if let Some(t) = kv.take_f64("validation.tol")? {
            cfg.tol = t;
        }
        let big_d_axis = take_axis(&mut kv, "D")?;
        if scenario == Scenario::Fig1 {
            if let Some(a) = big_d_axis {
                cfg.big_d = a;
            }
        } else {
            match big_d_axis {
                Some(a) if a.n == 1 => {
                    cfg.big_d = a;
                    cfg.small_d = Axis {
                        lo: -a.lo,
                        hi: a.lo,
                        n: cfg.small_d.n,
                    };
                }
                Some(_) => {
                    return Err(CliError::Config(
                        "fig2/fig3 take a single D value, not a grid".into(),
                    ))
                }
                None => {}
            }
            let t_max = kv.take_f64("time.t_max")?;
            if t_max.is_some_and(|t| t <= 0.0) {
                return Err(CliError::Config("time.t_max must be > 0".into()));
            }
            cfg.time.t_max = t_max.or(cfg.time.t_max);
            if let Some(n) = kv.take_usize("time.n_samples")? {
                if n < 2 {
                    return Err(CliError::Config("time.n_samples must be >= 2".into()));
                }
                cfg.time.n_samples = n;
            }
            match (kv.take("initial.preset"), kv.take("initial.sigma")) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Config(
                        "give either initial.preset or initial.sigma, not both".into(),
                    ))
                }
                (Some(p), None) => {
                    preset_covariance(&p)?;
                    cfg.initial = InitialState::Preset(p);
                }
                (None, Some(s)) => {
                    let parsed = RunConfig::from_text(&format!("initial.sigma = {s}"))?;
                    cfg.initial = parsed.initial;
                }
                (None, None) => {}
            }
            if let Some(b) = kv.take_bool("run.allow_unphysical")? {
                cfg.allow_unphysical = b;
            }
        }
        if let Some(a) = take_axis(&mut kv, "d")? {
            cfg.small_d = a;
        }
        kv.finish()?;
        Ok(cfg)
    }

    fn environment(&self, big_d: f64, small_d: f64) -> EnvironmentSpec {
        match self.scenario {
            Scenario::Fig1 => gibbs_environment(&self.oscillator, self.lambda, big_d, 0.0, small_d),
            _ => symmetric_environment(self.lambda, big_d, 0.0, big_d, 0.0, small_d, 0.0),
        }
    }

    /// Gate settings for the shared validation helpers.
    fn gate(&self) -> RunConfig {
        let mut rc = RunConfig::from_text("").expect("empty config parses");
        rc.oscillator = self.oscillator;
        rc.positivity = Positivity::Full;
        rc.allow_unphysical = self.allow_unphysical;
        rc.tol = self.tol;
        rc
    }
}

fn take_axis(kv: &mut KeyValues, name: &str) -> Result<Option<Axis>> {
    let single = kv.take_f64(name)?;
    let lo = kv.take_f64(&format!("grid.{name}.lo"))?;
    let hi = kv.take_f64(&format!("grid.{name}.hi"))?;
    let n = kv.take_usize(&format!("grid.{name}.n"))?;
    match (single, lo, hi, n) {
        (None, None, None, None) => Ok(None),
        (Some(v), None, None, None) => Ok(Some(Axis::point(v))),
        (None, Some(lo), Some(hi), Some(n)) => Ok(Some(Axis { lo, hi, n })),
        _ => Err(CliError::Config(format!(
            "set either {name}=<value> or all of grid.{name}.lo, grid.{name}.hi, grid.{name}.n"
        ))),
    }
}

/// Files written by a scenario, plus any warnings for stderr.
#[derive(Debug, Default)]
pub struct ScenarioOutput {
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

/// `out.csv` becomes `out.events.csv`.
pub fn events_path(out: &Path) -> PathBuf {
    out.with_extension("events.csv")
}

pub fn run_scenario(cfg: &ScenarioConfig, out: &Path, jobs: usize) -> Result<ScenarioOutput> {
    if jobs == 0 {
        return Err(CliError::Config("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {jobs} workers: {e}")))?;
    match cfg.scenario {
        Scenario::Fig1 => pool.install(|| fig1(cfg, out)),
        _ => pool.install(|| trace_scenario(cfg, out)),
    }
}

fn fig1(cfg: &ScenarioConfig, out: &Path) -> Result<ScenarioOutput> {
    if !(cfg.lambda > 0.0) {
        return Err(CliError::Environment(format!(
            "{} (lambda = {})",
            Constraint::DissipationPositive.name(),
            fmt_g(cfg.lambda)
        )));
    }
    let points: Vec<(f64, f64)> = cfg
        .big_d
        .values()
        .into_iter()
        .flat_map(|big| {
            cfg.small_d
                .values()
                .into_iter()
                .map(move |small| (big, small))
        })
        .collect();
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|&(big, small)| {
            let env = cfg.environment(big, small);
            let cp = validate_environment(&env, cfg.tol).is_ok_and(|r| r.is_ok());
            let asym = Dynamics::new(&cfg.oscillator, &env)
                .ok()
                .map(|d| asymptote(&d));
            vec![
                fmt_g(big),
                fmt_g(small),
                fmt_opt(asym.and_then(|a| a.e)),
                fmt_opt(asym.map(|a| a.s)),
                fmt_flag(big >= small).into(),
                fmt_flag(cp).into(),
            ]
        })
        .collect();
    let mut w = CsvWriter::create(out, &FIG1_HEADER)?;
    for row in rows {
        w.row(row)?;
    }
    w.finish()?;
    Ok(ScenarioOutput {
        files: vec![out.to_path_buf()],
        warnings: Vec::new(),
    })
}

struct DResult {
    d: f64,
    cauchy_schwarz: bool,
    completely_positive: bool,
    outcome: std::result::Result<(EntanglementTrace, EventReport), String>,
}

fn trace_scenario(cfg: &ScenarioConfig, out: &Path) -> Result<ScenarioOutput> {
    let big_d = cfg.big_d.lo;
    let gate = cfg.gate();
    gate_environment(&gate, &cfg.environment(big_d, 0.0))?;
    let sigma0: CovarianceMatrix = cfg.initial.covariance()?;
    let mut warnings = Vec::new();
    if let Some(w) = gate_initial(&gate, &sigma0)? {
        warnings.push(w);
    }
    let t_max = cfg.time.t_max_for(cfg.lambda);
    let results: Vec<DResult> = cfg
        .small_d
        .values()
        .par_iter()
        .map(|&d| {
            let env = cfg.environment(big_d, d);
            let report = validate_environment(&env, cfg.tol);
            let outcome = Dynamics::new(&cfg.oscillator, &env)
                .map_err(CliError::from)
                .and_then(|dy| {
                    trajectory(
                        &dy,
                        &cfg.oscillator,
                        &env,
                        &sigma0,
                        t_max,
                        cfg.time.n_samples,
                    )
                })
                .map_err(|e| e.to_string());
            DResult {
                d,
                cauchy_schwarz: report
                    .as_ref()
                    .is_ok_and(|r| r.is_ok_under(Positivity::Minors)),
                completely_positive: report.as_ref().is_ok_and(|r| r.is_ok()),
                outcome,
            }
        })
        .collect();

    let mut traces = CsvWriter::create(out, &TRACE_HEADER)?;
    let summary_path = events_path(out);
    let mut summary = CsvWriter::create(&summary_path, &EVENTS_HEADER)?;
    for r in &results {
        let d = fmt_g(r.d);
        match &r.outcome {
            Ok((trace, events)) => {
                for i in 0..trace.len() {
                    traces.row([
                        fmt_g(trace.times[i]),
                        d.clone(),
                        fmt_g(trace.s_values[i]),
                        fmt_opt(trace.e_values[i]),
                        fmt_opt(trace.nu_tilde_minus[i]),
                        fmt_flag(trace.is_entangled(i)).into(),
                    ])?;
                }
                summary.row([
                    d,
                    fmt_flag(r.cauchy_schwarz).into(),
                    fmt_flag(r.completely_positive).into(),
                    events.classification.as_str().into(),
                    events.crossings.len().to_string(),
                    join_cell(events.crossings.iter().map(|c| fmt_g(c.time))),
                    fmt_g(events.asymptotic_s),
                    events.asymptotic_verdict.as_str().into(),
                    join_cell(events.warnings.iter().map(|w| w.to_string())),
                ])?;
            }
            Err(e) => {
                warnings.push(format!("d = {d}: {e}"));
                summary.row([
                    d,
                    fmt_flag(r.cauchy_schwarz).into(),
                    fmt_flag(r.completely_positive).into(),
                    String::new(),
                    "0".into(),
                    String::new(),
                    "nan".into(),
                    String::new(),
                    e.clone(),
                ])?;
            }
        }
    }
    traces.finish()?;
    summary.finish()?;
    Ok(ScenarioOutput {
        files: vec![out.to_path_buf(), summary_path],
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn events_path_sits_next_to_output() {
        assert_eq!(
            events_path(Path::new("out/fig2.csv")),
            PathBuf::from("out/fig2.events.csv")
        );
        assert_eq!(
            events_path(Path::new("trace")),
            PathBuf::from("trace.events.csv")
        );
    }

    #[test]
    fn d_range_follows_diffusion() {
        let cfg = ScenarioConfig::with_overrides(Scenario::Fig2, &set(&[("D", "0.3")])).unwrap();
        assert_eq!(cfg.big_d, Axis::point(0.3));
        assert_eq!(
            (cfg.small_d.lo, cfg.small_d.hi, cfg.small_d.n),
            (-0.3, 0.3, 41)
        );
        assert!(
            ScenarioConfig::with_overrides(Scenario::Fig2, &set(&[("grid.D.lo", "0.1")])).is_err()
        );
    }

    #[test]
    fn presets() {
        assert!(ScenarioConfig::preset(Scenario::Fig3).allow_unphysical);
        assert!(!ScenarioConfig::preset(Scenario::Fig2).allow_unphysical);
        let fig1 = ScenarioConfig::preset(Scenario::Fig1);
        assert_eq!(
            fig1.big_d.values().len() * fig1.small_d.values().len(),
            91 * 101
        );
        assert!(Scenario::parse("fig4").is_err());
    }
}
