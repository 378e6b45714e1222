//! Single-shot evaluation of one configuration.

use std::fmt::Write as _;
use std::path::PathBuf;

use gaussdyn_core::entanglement::asymptotic_negativity;
use gaussdyn_core::model::Constraint;
use gaussdyn_core::{
    check_physical, simon_s, validate_environment, CovarianceMatrix, Dynamics, EnvironmentSpec,
    Positivity, Verdict,
};

use crate::analysis::{asymptote, constraint_tag, trajectory};
use crate::config::RunConfig;
use crate::csv::CsvWriter;
use crate::error::{CliError, Result};
use crate::format::{fmt_flag, fmt_g, fmt_opt};

pub const TRACE_HEADER: [&str; 5] = ["t", "S", "E", "nu_tilde_minus", "entangled"];

/// Checks the environment under the configured positivity rule; exit 3 on failure.
pub fn gate_environment(cfg: &RunConfig, env: &EnvironmentSpec) -> Result<String> {
    let report = validate_environment(env, cfg.tol)?;
    let names: Vec<String> = report
        .violations
        .iter()
        .map(|v| {
            format!(
                "{} [{}] (residual {})",
                v.constraint.name(),
                constraint_tag(v.constraint),
                fmt_g(v.residual)
            )
        })
        .collect();
    if !report.is_ok_under(cfg.positivity) {
        let relevant: Vec<String> = report
            .violations
            .iter()
            .zip(&names)
            .filter(|(v, _)| {
                cfg.positivity == Positivity::Full
                    || v.constraint != Constraint::PositiveSemidefinite
            })
            .map(|(_, n)| n.clone())
            .collect();
        return Err(CliError::Environment(relevant.join("; ")));
    }
    if names.is_empty() {
        Ok("ok".into())
    } else {
        Ok(format!(
            "ok under minors-only positivity; also violates {}",
            names.join("; ")
        ))
    }
}

/// Checks the initial covariance; exit 4 unless unphysical states are allowed.
/// Returns a warning line when an unphysical state is let through.
pub fn gate_initial(cfg: &RunConfig, sigma0: &CovarianceMatrix) -> Result<Option<String>> {
    let phys = check_physical(sigma0, cfg.tol);
    if phys.is_physical {
        return Ok(None);
    }
    let msg = format!(
        "nu_minus = {} < 1/2 (min eigenvalue {})",
        fmt_g(phys.symplectic_eigenvalues[0]),
        fmt_g(sigma0.min_eigenvalue())
    );
    if cfg.allow_unphysical {
        Ok(Some(format!(
            "warning: unphysical initial covariance allowed: {msg}"
        )))
    } else {
        Err(CliError::Unphysical(msg))
    }
}

/// Outcome of [`run_single`]: the text report and where the trace went.
#[derive(Debug)]
pub struct RunOutput {
    pub report: String,
    pub trace_path: Option<PathBuf>,
}

pub fn run_single(cfg: &RunConfig, out: Option<PathBuf>) -> Result<RunOutput> {
    if !cfg.sweep.is_empty() {
        return Err(CliError::Config(
            "config has a sweep block; use `gaussdyn sweep`".into(),
        ));
    }
    let osc = cfg.oscillator;
    let env = cfg.environment_spec();
    let validation = gate_environment(cfg, &env)?;
    let sigma0 = cfg.initial.covariance()?;
    let warning = gate_initial(cfg, &sigma0)?;

    let dynamics = Dynamics::new(&osc, &env)?;
    let asym = asymptote(&dynamics);
    let time = cfg.time.unwrap_or_default();
    let t_max = time.t_max_for(env.lambda);
    let (trace, events) = trajectory(&dynamics, &osc, &env, &sigma0, t_max, time.n_samples)?;

    let mut r = String::new();
    if let Some(w) = &warning {
        let _ = writeln!(r, "{w}");
    }
    let _ = writeln!(r, "environment: {validation}");
    let _ = writeln!(r, "sigma(inf):");
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| format!("{:>16}", fmt_g(asym.sigma.get(i, j))))
            .collect();
        let _ = writeln!(r, "  {}", row.join(" "));
    }
    let s0 = simon_s(&sigma0).s;
    let _ = writeln!(
        r,
        "S(0) = {} ({})",
        fmt_g(s0),
        Verdict::from_simon(s0).as_str()
    );
    let _ = writeln!(
        r,
        "S(inf) = {} ({})",
        fmt_g(asym.s),
        Verdict::from_simon(asym.s).as_str()
    );
    let _ = writeln!(r, "E(inf) = {}", fmt_opt(asym.e));
    if let Ok(e) = asymptotic_negativity(&osc, &env) {
        let _ = writeln!(r, "E(inf) closed form = {}", fmt_g(e));
    }
    let _ = writeln!(
        r,
        "classification on [0, {}] with {} samples: {}",
        fmt_g(t_max),
        time.n_samples,
        events.classification.as_str()
    );
    for c in &events.crossings {
        let _ = writeln!(r, "  crossing at t = {} ({:?})", fmt_g(c.time), c.direction);
    }
    for w in &events.warnings {
        let _ = writeln!(r, "  warning: {w}");
    }

    let trace_path = match (cfg.time, out.or_else(|| cfg.output.clone())) {
        (Some(_), Some(path)) => {
            write_trace(&path, &trace)?;
            let _ = writeln!(r, "trace written to {}", path.display());
            Some(path)
        }
        _ => None,
    };
    Ok(RunOutput {
        report: r,
        trace_path,
    })
}

fn write_trace(path: &std::path::Path, trace: &gaussdyn_core::EntanglementTrace) -> Result<()> {
    let mut w = CsvWriter::create(path, &TRACE_HEADER)?;
    for i in 0..trace.len() {
        w.row([
            fmt_g(trace.times[i]),
            fmt_g(trace.s_values[i]),
            fmt_opt(trace.e_values[i]),
            fmt_opt(trace.nu_tilde_minus[i]),
            fmt_flag(trace.is_entangled(i)).to_string(),
        ])?;
    }
    w.finish()
}
