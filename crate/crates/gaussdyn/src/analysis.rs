//! Per-point evaluation shared by `run`, `sweep` and the scenarios.

use gaussdyn_core::entanglement::log_negativity;
use gaussdyn_core::events::{detect_events_with, trace_with, DEFAULT_REFINE_TOL};
use gaussdyn_core::model::Constraint;
use gaussdyn_core::{
    simon_s, CovarianceMatrix, Dynamics, EntanglementTrace, EnvironmentSpec, EventReport,
    OscillatorSpec,
};

use crate::error::Result;

/// Short CSV-safe tag for a constraint.
pub fn constraint_tag(c: Constraint) -> &'static str {
    match c {
        Constraint::DissipationPositive => "lambda_positive",
        Constraint::MinorXPx => "minor_x_px",
        Constraint::MinorYPy => "minor_y_py",
        Constraint::MinorXY => "minor_x_y",
        Constraint::MinorXPy => "minor_x_py",
        Constraint::MinorYPx => "minor_y_px",
        Constraint::MinorPxPy => "minor_px_py",
        Constraint::PositiveSemidefinite => "positive_semidefinite",
    }
}

/// Stationary state with its Simon value and logarithmic negativity.
#[derive(Debug, Clone, Copy)]
pub struct Asymptote {
    pub sigma: CovarianceMatrix,
    pub s: f64,
    /// `None` when the negativity is undefined for this state.
    pub e: Option<f64>,
}

pub fn asymptote(dynamics: &Dynamics) -> Asymptote {
    let sigma = *dynamics.steady_state();
    Asymptote {
        sigma,
        s: simon_s(&sigma).s,
        e: finite_negativity(&sigma),
    }
}

pub fn finite_negativity(sigma: &CovarianceMatrix) -> Option<f64> {
    log_negativity(sigma)
        .ok()
        .filter(|n| !n.clamped)
        .map(|n| n.e)
}

pub fn trajectory(
    dynamics: &Dynamics,
    osc: &OscillatorSpec,
    env: &EnvironmentSpec,
    sigma0: &CovarianceMatrix,
    t_max: f64,
    n_samples: usize,
) -> Result<(EntanglementTrace, EventReport)> {
    let trace = trace_with(dynamics, sigma0, t_max, n_samples)?;
    let report = detect_events_with(dynamics, &trace, osc, env, sigma0, DEFAULT_REFINE_TOL)?;
    Ok((trace, report))
}
