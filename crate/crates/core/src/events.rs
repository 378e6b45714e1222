//! Sampling of `S(t)` and `E(t)` along a trajectory and classification of the
//! entanglement transitions it contains.

use alloc::vec::Vec;
use core::fmt;

use crate::dynamics::Dynamics;
use crate::entanglement::{
    asymptotic_simon_gibbs, log_negativity, simon_s, Verdict, SIMON_ZERO_BAND,
};
use crate::error::{Error, Result};
use crate::model::{CovarianceMatrix, EnvironmentSpec, OscillatorSpec};

/// Default number of samples per trajectory.
pub const DEFAULT_N_SAMPLES: usize = 2000;

/// Default horizon in units of `1 / lambda`.
pub const DEFAULT_HORIZON_DECAY_TIMES: f64 = 20.0;

/// Maximum bisection steps when refining a crossing.
pub const MAX_BISECTION_STEPS: usize = 60;

/// Default bracket width at which bisection stops.
pub const DEFAULT_REFINE_TOL: f64 = 1e-12;

/// Interior probes per grid cell used to detect unresolved sign flips.
const CELL_PROBES: usize = 3;

/// Entangled by the strict rule `S < -SIMON_ZERO_BAND`.
fn entangled(s: f64) -> bool {
    s < -SIMON_ZERO_BAND
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EntanglementTrace {
    pub times: Vec<f64>,
    pub s_values: Vec<f64>,
    /// `None` where the logarithmic negativity is undefined (degenerate or
    /// non-positive covariance).
    pub e_values: Vec<Option<f64>>,
    pub nu_tilde_minus: Vec<Option<f64>>,
}

impl EntanglementTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn is_entangled(&self, i: usize) -> bool {
        entangled(self.s_values[i])
    }
}

/// Samples `S` and `E` on `n_samples` uniformly spaced times in `[0, t_max]`.
pub fn trace(
    sigma0: &CovarianceMatrix,
    osc: &OscillatorSpec,
    env: &EnvironmentSpec,
    t_max: f64,
    n_samples: usize,
) -> Result<EntanglementTrace> {
    let dynamics = Dynamics::new(osc, env)?;
    trace_with(&dynamics, sigma0, t_max, n_samples)
}

pub fn trace_with(
    dynamics: &Dynamics,
    sigma0: &CovarianceMatrix,
    t_max: f64,
    n_samples: usize,
) -> Result<EntanglementTrace> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidGrid {
            reason: "t_max must be positive and finite",
        });
    }
    if n_samples < 2 {
        return Err(Error::InvalidGrid {
            reason: "n_samples must be at least 2",
        });
    }
    let mut out = EntanglementTrace::default();
    let last = (n_samples - 1) as f64;
    for i in 0..n_samples {
        let t = t_max * i as f64 / last;
        let sigma = dynamics.evolve(sigma0, t)?;
        let negativity = log_negativity(&sigma).ok().filter(|n| !n.clamped);
        out.times.push(t);
        out.s_values.push(simon_s(&sigma).s);
        out.e_values.push(negativity.map(|n| n.e));
        out.nu_tilde_minus
            .push(negativity.map(|n| n.nu_tilde_minus));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    ToEntangled,
    ToSeparable,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::ToEntangled => "to-entangled",
            Direction::ToSeparable => "to-separable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Refined crossing time.
    pub time: f64,
    pub direction: Direction,
    /// `S` evaluated at `time`.
    pub s_at_crossing: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    SeparableThroughout,
    EntangledThroughout,
    /// Separable, then entangled for the rest of the window.
    Generation,
    /// Entangled, then separable for the rest of the window.
    SuddenDeath,
    /// Several crossings, not of the temporary-generation shape.
    CollapseAndRevival,
    /// Starts separable, becomes entangled, ends separable.
    TemporaryGeneration,
}

impl Classification {
    pub const ALL: [Classification; 6] = [
        Classification::SeparableThroughout,
        Classification::EntangledThroughout,
        Classification::Generation,
        Classification::SuddenDeath,
        Classification::CollapseAndRevival,
        Classification::TemporaryGeneration,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::SeparableThroughout => "separable-throughout",
            Classification::EntangledThroughout => "entangled-throughout",
            Classification::Generation => "generation",
            Classification::SuddenDeath => "sudden-death",
            Classification::CollapseAndRevival => "collapse-and-revival",
            Classification::TemporaryGeneration => "temporary-generation",
        }
    }

    /// Classifies from the initial state and the ordered crossings.
    pub fn from_crossings(initially_entangled: bool, crossings: &[Crossing]) -> Self {
        match crossings {
            [] if initially_entangled => Classification::EntangledThroughout,
            [] => Classification::SeparableThroughout,
            [only] => match only.direction {
                Direction::ToEntangled => Classification::Generation,
                Direction::ToSeparable => Classification::SuddenDeath,
            },
            [first, .., last] => {
                if first.direction == Direction::ToEntangled
                    && last.direction == Direction::ToSeparable
                {
                    Classification::TemporaryGeneration
                } else {
                    Classification::CollapseAndRevival
                }
            }
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventWarning {
    /// The sign of `S` changes more often inside `[t_lo, t_hi]` than the
    /// endpoints show. Increase `n_samples`.
    CoarseGrid { t_lo: f64, t_hi: f64 },
}

impl fmt::Display for EventWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventWarning::CoarseGrid { t_lo, t_hi } => write!(
                f,
                "unresolved sign changes of S in [{t_lo}, {t_hi}]; increase n_samples"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventReport {
    pub crossings: Vec<Crossing>,
    pub classification: Classification,
    pub asymptotic_s: f64,
    pub asymptotic_verdict: Verdict,
    pub warnings: Vec<EventWarning>,
}

/// Finds and refines the sign changes of `S` along `trace` and classifies
/// the trajectory.
pub fn detect_events(
    trace: &EntanglementTrace,
    osc: &OscillatorSpec,
    env: &EnvironmentSpec,
    sigma0: &CovarianceMatrix,
    refine_tol: f64,
) -> Result<EventReport> {
    let dynamics = Dynamics::new(osc, env)?;
    detect_events_with(&dynamics, trace, osc, env, sigma0, refine_tol)
}

pub fn detect_events_with(
    dynamics: &Dynamics,
    trace: &EntanglementTrace,
    osc: &OscillatorSpec,
    env: &EnvironmentSpec,
    sigma0: &CovarianceMatrix,
    refine_tol: f64,
) -> Result<EventReport> {
    let n = trace.len();
    if n < 2 || trace.s_values.len() != n {
        return Err(Error::InvalidGrid {
            reason: "trace needs at least two samples of equal length",
        });
    }
    if trace.times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid {
            reason: "trace times must be strictly increasing",
        });
    }
    let s_at = |t: f64| -> Result<f64> { Ok(simon_s(&dynamics.evolve(sigma0, t)?).s) };

    let mut crossings = Vec::new();
    let mut warnings = Vec::new();
    for i in 0..n - 1 {
        let (t_lo, t_hi) = (trace.times[i], trace.times[i + 1]);
        let start = trace.is_entangled(i);
        let end = trace.is_entangled(i + 1);

        let mut flips = 0;
        let mut prev = start;
        for k in 1..=CELL_PROBES {
            let t = t_lo + (t_hi - t_lo) * k as f64 / (CELL_PROBES + 1) as f64;
            let here = entangled(s_at(t)?);
            flips += usize::from(here != prev);
            prev = here;
        }
        flips += usize::from(end != prev);
        if flips > usize::from(start != end) {
            warnings.push(EventWarning::CoarseGrid { t_lo, t_hi });
        }

        if start != end {
            let (mut lo, mut hi) = (t_lo, t_hi);
            for _ in 0..MAX_BISECTION_STEPS {
                if hi - lo <= refine_tol {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if entangled(s_at(mid)?) == start {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let time = 0.5 * (lo + hi);
            crossings.push(Crossing {
                time,
                direction: if end {
                    Direction::ToEntangled
                } else {
                    Direction::ToSeparable
                },
                s_at_crossing: s_at(time)?,
            });
        }
    }

    let classification = Classification::from_crossings(trace.is_entangled(0), &crossings);
    let asymptotic_s = match asymptotic_simon_gibbs(osc, env) {
        Ok(s) => s,
        Err(_) => simon_s(dynamics.steady_state()).s,
    };
    Ok(EventReport {
        crossings,
        classification,
        asymptotic_s,
        asymptotic_verdict: Verdict::from_simon(asymptotic_s),
        warnings,
    })
}
