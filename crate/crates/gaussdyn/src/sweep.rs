//! Parallel parameter sweeps over one or two configuration parameters.

use std::path::Path;

use rayon::prelude::*;

use gaussdyn_core::model::Constraint;
use gaussdyn_core::{
    validate_environment, Classification, CovarianceMatrix, Dynamics, OscillatorSpec, Positivity,
};

use crate::analysis::{asymptote, constraint_tag, trajectory};
use crate::config::RunConfig;
use crate::csv::CsvWriter;
use crate::error::{CliError, Result};
use crate::format::{fmt_flag, fmt_g, fmt_opt, join_cell};
use crate::run::gate_initial;

/// Columns after the swept parameters.
pub const RESULT_COLUMNS: [&str; 6] = [
    "valid",
    "violations",
    "S_infinity",
    "E_infinity",
    "classification",
    "crossing_times",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    pub valid: bool,
    pub violations: Vec<&'static str>,
    pub s_infinity: Option<f64>,
    pub e_infinity: Option<f64>,
    pub classification: Option<Classification>,
    pub crossing_times: Vec<f64>,
}

impl SweepRow {
    fn cells(&self) -> Vec<String> {
        let mut cells: Vec<String> = self.coords.iter().map(|&c| fmt_g(c)).collect();
        cells.push(fmt_flag(self.valid).into());
        cells.push(join_cell(self.violations.iter().map(|v| v.to_string())));
        cells.push(fmt_opt(self.s_infinity));
        cells.push(fmt_opt(self.e_infinity));
        cells.push(self.classification.map_or("", |c| c.as_str()).into());
        cells.push(join_cell(self.crossing_times.iter().map(|&t| fmt_g(t))));
        cells
    }
}

/// Grid points in lexicographic order (first axis outermost).
pub fn grid(cfg: &RunConfig) -> Vec<Vec<f64>> {
    cfg.sweep.iter().fold(vec![Vec::new()], |acc, axis| {
        let values = axis.values();
        acc.into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

/// Evaluates one grid point. Never fails: problems show up as an invalid
/// flag and missing values.
pub fn evaluate_point(cfg: &RunConfig, sigma0: &CovarianceMatrix, coords: &[f64]) -> SweepRow {
    let mut row = SweepRow {
        coords: coords.to_vec(),
        valid: false,
        violations: Vec::new(),
        s_infinity: None,
        e_infinity: None,
        classification: None,
        crossing_times: Vec::new(),
    };
    let mut point = cfg.clone();
    for (axis, &value) in cfg.sweep.iter().zip(coords) {
        match point.with_param(&axis.param, value) {
            Ok(p) => point = p,
            Err(_) => {
                row.violations.push("parameter");
                return row;
            }
        }
    }
    let osc = point.oscillator;
    if OscillatorSpec::new(osc.m, osc.omega).is_err() {
        row.violations.push("oscillator");
        return row;
    }
    let env = point.environment_spec();
    match validate_environment(&env, point.tol) {
        Ok(report) => {
            row.valid = report.is_ok_under(point.positivity);
            row.violations = report
                .violations
                .iter()
                .map(|v| v.constraint)
                .filter(|&c| {
                    point.positivity == Positivity::Full || c != Constraint::PositiveSemidefinite
                })
                .map(constraint_tag)
                .collect();
        }
        Err(_) => {
            row.violations.push("non_finite");
            return row;
        }
    }
    let Ok(dynamics) = Dynamics::new(&osc, &env) else {
        return row;
    };
    let asym = asymptote(&dynamics);
    row.s_infinity = Some(asym.s);
    row.e_infinity = asym.e;
    let time = point.time.unwrap_or_default();
    if let Ok((_, events)) = trajectory(
        &dynamics,
        &osc,
        &env,
        sigma0,
        time.t_max_for(env.lambda),
        time.n_samples,
    ) {
        row.classification = Some(events.classification);
        row.crossing_times = events.crossings.iter().map(|c| c.time).collect();
    }
    row
}

/// Evaluates the whole grid on `jobs` worker threads; rows come back in grid
/// order whatever the scheduling.
pub fn evaluate(cfg: &RunConfig, jobs: usize) -> Result<Vec<SweepRow>> {
    if cfg.sweep.is_empty() {
        return Err(CliError::Config("config has no sweep block".into()));
    }
    if jobs == 0 {
        return Err(CliError::Config("--jobs must be at least 1".into()));
    }
    let sigma0 = cfg.initial.covariance()?;
    if let Some(w) = gate_initial(cfg, &sigma0)? {
        eprintln!("{w}");
    }
    let points = grid(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .map(|p| evaluate_point(cfg, &sigma0, p))
            .collect()
    }))
}

pub fn header(cfg: &RunConfig) -> Vec<&str> {
    cfg.sweep
        .iter()
        .map(|a| a.param.as_str())
        .chain(RESULT_COLUMNS)
        .collect()
}

/// Runs the sweep and writes the CSV. Returns the number of data rows.
pub fn run_sweep(cfg: &RunConfig, jobs: usize, out: &Path) -> Result<usize> {
    let rows = evaluate(cfg, jobs)?;
    let mut w = CsvWriter::create(out, &header(cfg))?;
    for row in &rows {
        w.row(row.cells())?;
    }
    w.finish()?;
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(extra: &str) -> RunConfig {
        RunConfig::from_text(&format!(
            "environment.kind = gibbs\nenvironment.lambda = 0.2\nenvironment.d_xx = 0.11\n\
             environment.positivity = minors\ntime.t_max = 10\ntime.n_samples = 50\n{extra}"
        ))
        .unwrap()
    }

    #[test]
    fn grid_is_lexicographic() {
        let c = cfg(
            "sweep.x.param = d_xx\nsweep.x.lo = 0.1\nsweep.x.hi = 0.2\nsweep.x.n = 2\n\
             sweep.y.param = d_xpy\nsweep.y.lo = 0\nsweep.y.hi = 1\nsweep.y.n = 3\n",
        );
        assert_eq!(
            grid(&c),
            vec![
                vec![0.1, 0.0],
                vec![0.1, 0.5],
                vec![0.1, 1.0],
                vec![0.2, 0.0],
                vec![0.2, 0.5],
                vec![0.2, 1.0],
            ]
        );
        assert_eq!(
            header(&c),
            [
                "d_xx",
                "d_xpy",
                "valid",
                "violations",
                "S_infinity",
                "E_infinity",
                "classification",
                "crossing_times"
            ]
        );
    }

    #[test]
    fn invalid_points_are_flagged_not_dropped() {
        let c = cfg("sweep.param = lambda\nsweep.lo = -0.1\nsweep.hi = 0.2\nsweep.n = 2\n");
        let rows = evaluate(&c, 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(!rows[0].valid);
        assert_eq!(rows[0].violations, vec!["lambda_positive"]);
        assert!(rows[0].s_infinity.is_none());
        assert!(rows[1].valid);
        assert!(rows[1].s_infinity.is_some());
    }

    #[test]
    fn bad_oscillator_point() {
        let c = cfg("sweep.param = m\nsweep.lo = 0\nsweep.hi = 1\nsweep.n = 2\n");
        let rows = evaluate(&c, 1).unwrap();
        assert_eq!(rows[0].violations, vec!["oscillator"]);
        assert!(!rows[0].valid);
    }
}
