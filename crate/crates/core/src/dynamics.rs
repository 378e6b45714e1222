//! Covariance dynamics `d sigma/dt = Y sigma + sigma Y^T + 2 D`.
//!
//! The primary path is analytic: `exp(Y t)` in closed form per oscillator
//! block, `sigma(inf)` from the Lyapunov equation, and
//! `sigma(t) = M (sigma(0) - sigma(inf)) M^T + sigma(inf)`.
//! [`evolve_ode_oracle`] integrates the differential equation directly and
//! shares none of that code.

use nalgebra::{Matrix4, SMatrix, SVector};

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::model::{CovarianceMatrix, EnvironmentSpec, OscillatorSpec};

/// Default RK4 step, in units of `1 / omega`.
pub const DEFAULT_ODE_STEP: f64 = 1e-3;

/// Block-diagonal drift matrix with two copies of
/// `[[-lambda, 1/m], [-m omega^2, -lambda]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix {
    entries: Matrix4<f64>,
    m: f64,
    omega: f64,
    lambda: f64,
}

impl DriftMatrix {
    pub fn entries(&self) -> &Matrix4<f64> {
        &self.entries
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn oscillator(&self) -> OscillatorSpec {
        OscillatorSpec {
            m: self.m,
            omega: self.omega,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix(Matrix4<f64>);

impl DiffusionMatrix {
    pub fn entries(&self) -> &Matrix4<f64> {
        &self.0
    }
}

/// `M(t) = exp(Y t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator {
    pub entries: Matrix4<f64>,
    pub t: f64,
}

pub fn build_drift(osc: &OscillatorSpec, env: &EnvironmentSpec) -> DriftMatrix {
    let (m, w, l) = (osc.m, osc.omega, env.lambda);
    #[rustfmt::skip]
    let entries = Matrix4::new(
        -l,         1.0 / m, 0.0,        0.0,
        -m * w * w, -l,      0.0,        0.0,
        0.0,        0.0,     -l,         1.0 / m,
        0.0,        0.0,     -m * w * w, -l,
    );
    DriftMatrix {
        entries,
        m,
        omega: w,
        lambda: l,
    }
}

pub fn build_diffusion(env: &EnvironmentSpec) -> DiffusionMatrix {
    let e = env;
    #[rustfmt::skip]
    let d = Matrix4::new(
        e.d_xx,  e.d_xpx,  e.d_xy,  e.d_xpy,
        e.d_xpx, e.d_pxpx, e.d_ypx, e.d_pxpy,
        e.d_xy,  e.d_ypx,  e.d_yy,  e.d_ypy,
        e.d_xpy, e.d_pxpy, e.d_ypy, e.d_pypy,
    );
    DiffusionMatrix(d)
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::NonFinite { field: "t" });
    }
    if t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    Ok(())
}

/// `exp(Y t)` from the per-block closed form
/// `e^{-lambda t} [[cos wt, sin wt / (m w)], [-m w sin wt, cos wt]]`.
pub fn propagator(y: &DriftMatrix, t: f64) -> Result<Propagator> {
    check_time(t)?;
    let decay = libm::exp(-y.lambda * t);
    let (s, c) = libm::sincos(y.omega * t);
    let mw = y.m * y.omega;
    let block = [[decay * c, decay * s / mw], [-decay * mw * s, decay * c]];
    let mut entries = Matrix4::zeros();
    for off in [0, 2] {
        for i in 0..2 {
            for j in 0..2 {
                entries[(off + i, off + j)] = block[i][j];
            }
        }
    }
    Ok(Propagator { entries, t })
}

/// `exp(Y t)` by generic scaling and squaring. Exists for cross-checking
/// [`propagator`].
pub fn propagator_generic(y: &DriftMatrix, t: f64) -> Result<Propagator> {
    check_time(t)?;
    let entries = expm(&(y.entries * t)).ok_or(Error::NonFinite { field: "Y t" })?;
    Ok(Propagator { entries, t })
}

/// Solves `Y S + S Y^T = -2 D` as the 16x16 system
/// `(I (x) Y + Y (x) I) vec(S) = -2 vec(D)` (column-major `vec`).
pub fn steady_state(y: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    if !(y.lambda > 0.0) {
        return Err(Error::NotHurwitz { lambda: y.lambda });
    }
    let ym = &y.entries;
    let mut system = SMatrix::<f64, 16, 16>::zeros();
    for j in 0..4 {
        for i in 0..4 {
            let row = i + 4 * j;
            for k in 0..4 {
                // (I (x) Y): same column j, mixes rows.
                system[(row, k + 4 * j)] += ym[(i, k)];
                // (Y (x) I): same row i, mixes columns.
                system[(row, i + 4 * k)] += ym[(j, k)];
            }
        }
    }
    let rhs = SVector::<f64, 16>::from_iterator(d.0.iter().map(|v| -2.0 * v));
    let solution = system.lu().solve(&rhs).ok_or(Error::SingularLyapunov)?;
    if solution.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularLyapunov);
    }
    let s = Matrix4::from_column_slice(solution.as_slice());
    Ok(CovarianceMatrix::symmetrized(&s))
}

/// `max |Y S + S Y^T + 2 D|`.
pub fn lyapunov_residual(y: &DriftMatrix, d: &DiffusionMatrix, sigma: &CovarianceMatrix) -> f64 {
    let s = sigma.matrix();
    (y.entries * s + s * y.entries.transpose() + d.0 * 2.0).amax()
}

/// `sigma(t) = M(t) (sigma0 - sigma_inf) M(t)^T + sigma_inf`, symmetrized.
pub fn evolve_with_steady(
    sigma0: &CovarianceMatrix,
    y: &DriftMatrix,
    steady: &CovarianceMatrix,
    t: f64,
) -> Result<CovarianceMatrix> {
    let m = propagator(y, t)?.entries;
    let s_inf = steady.matrix();
    let out = m * (sigma0.matrix() - s_inf) * m.transpose() + s_inf;
    Ok(CovarianceMatrix::symmetrized(&out))
}

pub fn evolve(
    sigma0: &CovarianceMatrix,
    y: &DriftMatrix,
    d: &DiffusionMatrix,
    t: f64,
) -> Result<CovarianceMatrix> {
    check_time(t)?;
    let steady = steady_state(y, d)?;
    evolve_with_steady(sigma0, y, &steady, t)
}

/// Integrates the covariance equation with classical fixed-step RK4.
///
/// The span `t` is split into `ceil(t / dt)` equal steps, so the step used is
/// at most `dt`.
pub fn evolve_ode_oracle(
    sigma0: &CovarianceMatrix,
    y: &DriftMatrix,
    d: &DiffusionMatrix,
    t: f64,
    dt: f64,
) -> Result<CovarianceMatrix> {
    check_time(t)?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidStep { dt, t });
    }
    if t == 0.0 {
        return Ok(*sigma0);
    }
    if dt > t {
        return Err(Error::InvalidStep { dt, t });
    }
    let steps = libm::ceil(t / dt * (1.0 - 1e-12)).max(1.0) as u64;
    let h = t / steps as f64;

    let ym = y.entries;
    let yt = ym.transpose();
    let two_d = d.0 * 2.0;
    let rhs = |s: &Matrix4<f64>| ym * s + s * yt + two_d;

    let mut s = *sigma0.matrix();
    for _ in 0..steps {
        let k1 = rhs(&s);
        let k2 = rhs(&(s + k1 * (h / 2.0)));
        let k3 = rhs(&(s + k2 * (h / 2.0)));
        let k4 = rhs(&(s + k3 * h));
        s += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    Ok(CovarianceMatrix::symmetrized(&s))
}

/// Precomputed `(Y, D, sigma_inf)` for one oscillator/environment pair.
/// Immutable; share it across threads to evaluate many times or states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dynamics {
    drift: DriftMatrix,
    diffusion: DiffusionMatrix,
    steady: CovarianceMatrix,
}

impl Dynamics {
    pub fn new(osc: &OscillatorSpec, env: &EnvironmentSpec) -> Result<Self> {
        env.check_finite()?;
        let drift = build_drift(osc, env);
        let diffusion = build_diffusion(env);
        let steady = steady_state(&drift, &diffusion)?;
        Ok(Self {
            drift,
            diffusion,
            steady,
        })
    }

    pub fn drift(&self) -> &DriftMatrix {
        &self.drift
    }

    pub fn diffusion(&self) -> &DiffusionMatrix {
        &self.diffusion
    }

    pub fn steady_state(&self) -> &CovarianceMatrix {
        &self.steady
    }

    pub fn evolve(&self, sigma0: &CovarianceMatrix, t: f64) -> Result<CovarianceMatrix> {
        evolve_with_steady(sigma0, &self.drift, &self.steady, t)
    }
}
