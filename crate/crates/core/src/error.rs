use core::fmt;

/// Errors raised by the core numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input field was NaN or infinite.
    NonFinite { field: &'static str },
    /// Mass or frequency was not strictly positive.
    InvalidOscillator { field: &'static str, value: f64 },
    /// A matrix that must be symmetric was not, beyond the tolerance.
    NotSymmetric { max_asymmetry: f64 },
    /// A covariance matrix that must be positive semidefinite was not.
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    /// Backward evolution was requested.
    NegativeTime { t: f64 },
    /// The ODE step is non-positive or larger than the integration span.
    InvalidStep { dt: f64, t: f64 },
    /// The drift matrix is not Hurwitz (dissipation rate not positive).
    NotHurwitz { lambda: f64 },
    /// The vectorized Lyapunov system could not be solved.
    SingularLyapunov,
    /// The environment does not have the identical-oscillator symmetry.
    NotSymmetricEnvironment { field: &'static str },
    /// The environment is not of the Gibbs (thermal asymptote) type.
    NotGibbsEnvironment { condition: &'static str },
    /// A closed form was requested outside the parameter range where it holds.
    OutsideClosedFormDomain { condition: &'static str },
    /// `m * omega * d_xx / lambda < 1/2`: the single-mode asymptote violates
    /// the uncertainty relation.
    UnimodalCondition { value: f64 },
    /// `f(sigma)` is negative beyond tolerance.
    DegenerateCovariance { f: f64 },
    /// The square-root argument in `f(sigma)` is negative beyond tolerance.
    NegativeDiscriminant { value: f64 },
    /// The closed-form `f(sigma)` and the partial-transpose spectrum disagree.
    NegativityMismatch { f: f64, nu_squared: f64 },
    /// Sampling grid parameters were out of range.
    InvalidGrid { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { field } => write!(f, "non-finite value in `{field}`"),
            Error::InvalidOscillator { field, value } => {
                write!(f, "oscillator `{field}` must be positive, got {value}")
            }
            Error::NotSymmetric { max_asymmetry } => {
                write!(
                    f,
                    "matrix is not symmetric (max |a_ij - a_ji| = {max_asymmetry:e})"
                )
            }
            Error::NotPositiveSemidefinite { min_eigenvalue } => write!(
                f,
                "covariance is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})"
            ),
            Error::NegativeTime { t } => write!(f, "time must be non-negative, got {t}"),
            Error::InvalidStep { dt, t } => {
                write!(f, "invalid step dt = {dt} for integration span t = {t}")
            }
            Error::NotHurwitz { lambda } => write!(
                f,
                "drift matrix has no stable steady state (lambda = {lambda} must be > 0)"
            ),
            Error::SingularLyapunov => write!(f, "singular Lyapunov system"),
            Error::NotSymmetricEnvironment { field } => write!(
                f,
                "environment is not symmetric between the two oscillators (`{field}` differs)"
            ),
            Error::NotGibbsEnvironment { condition } => {
                write!(
                    f,
                    "environment is not of Gibbs type: {condition} does not hold"
                )
            }
            Error::OutsideClosedFormDomain { condition } => {
                write!(f, "closed form does not apply: requires {condition}")
            }
            Error::UnimodalCondition { value } => write!(
                f,
                "unimodal uncertainty condition m*omega*d_xx/lambda >= 1/2 violated ({value})"
            ),
            Error::DegenerateCovariance { f: v } => {
                write!(f, "degenerate covariance: f(sigma) = {v:e} <= 0")
            }
            Error::NegativeDiscriminant { value } => {
                write!(f, "negative discriminant in f(sigma): {value:e}")
            }
            Error::NegativityMismatch { f: v, nu_squared } => write!(
                f,
                "f(sigma) = {v:e} disagrees with partial-transpose spectrum nu^2 = {nu_squared:e}"
            ),
            Error::InvalidGrid { reason } => write!(f, "invalid sampling grid: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
