//! Covariance-matrix dynamics of two identical, uncoupled harmonic
//! oscillators in a common Markovian environment, and the entanglement of
//! the resulting two-mode Gaussian states.
//!
//! `no_std` with `alloc`. Units have `hbar = 1`; covariance ordering is
//! `(x, p_x, y, p_y)`.

#![no_std]

extern crate alloc;

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod events;
pub mod expm;
pub mod model;

pub use dynamics::{
    build_diffusion, build_drift, evolve, evolve_ode_oracle, propagator, propagator_generic,
    steady_state, DiffusionMatrix, DriftMatrix, Dynamics, Propagator,
};
pub use entanglement::{
    asymptotic_c_block, asymptotic_det_c, asymptotic_negativity, asymptotic_simon_gibbs,
    entanglement_interval, log_negativity, simon_s, EntanglementInterval, NegativityValue,
    SimonValue, Verdict,
};
pub use error::{Error, Result};
pub use events::{
    detect_events, trace, Classification, Crossing, Direction, EntanglementTrace, EventReport,
};
pub use model::{
    blocks, check_physical, gibbs_environment, symmetric_environment, validate_environment,
    CovarianceMatrix, EnvironmentSpec, OscillatorSpec, PhysicalityReport, Positivity,
    TwoModeBlocks, ValidationReport, DEFAULT_TOL,
};
