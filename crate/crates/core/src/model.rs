//! Domain types: oscillator and environment parameters, two-mode covariance
//! matrices, and the validity gates applied to them.
//!
//! Canonical ordering everywhere is `(x, p_x, y, p_y)` with `hbar = 1`, so the
//! vacuum covariance is `identity / 2`.

use alloc::vec::Vec;
use core::fmt;

use nalgebra::{Complex, Matrix2, Matrix4, SymmetricEigen};

use crate::error::{Error, Result};

/// Tolerance used by every validity gate unless the caller supplies one.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Mass and angular frequency shared by the two identical oscillators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    pub m: f64,
    pub omega: f64,
}

impl OscillatorSpec {
    pub fn new(m: f64, omega: f64) -> Result<Self> {
        for (field, value) in [("m", m), ("omega", omega)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { field });
            }
            if value <= 0.0 {
                return Err(Error::InvalidOscillator { field, value });
            }
        }
        Ok(Self { m, omega })
    }

    /// `m = omega = 1`.
    pub fn unit() -> Self {
        Self { m: 1.0, omega: 1.0 }
    }
}

/// Dissipation rate and the ten real diffusion coefficients of the
/// environment coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnvironmentSpec {
    pub lambda: f64,
    pub d_xx: f64,
    pub d_xpx: f64,
    pub d_pxpx: f64,
    pub d_yy: f64,
    pub d_ypy: f64,
    pub d_pypy: f64,
    pub d_xy: f64,
    pub d_xpy: f64,
    pub d_ypx: f64,
    pub d_pxpy: f64,
}

impl EnvironmentSpec {
    /// Field names in declaration order, matching [`EnvironmentSpec::values`].
    pub const FIELDS: [&'static str; 11] = [
        "lambda", "d_xx", "d_xpx", "d_pxpx", "d_yy", "d_ypy", "d_pypy", "d_xy", "d_xpy", "d_ypx",
        "d_pxpy",
    ];

    pub fn values(&self) -> [f64; 11] {
        [
            self.lambda,
            self.d_xx,
            self.d_xpx,
            self.d_pxpx,
            self.d_yy,
            self.d_ypy,
            self.d_pypy,
            self.d_xy,
            self.d_xpy,
            self.d_ypx,
            self.d_pxpy,
        ]
    }

    /// Mutable access by field name; `None` for unknown names.
    pub fn field_mut(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "lambda" => &mut self.lambda,
            "d_xx" => &mut self.d_xx,
            "d_xpx" => &mut self.d_xpx,
            "d_pxpx" => &mut self.d_pxpx,
            "d_yy" => &mut self.d_yy,
            "d_ypy" => &mut self.d_ypy,
            "d_pypy" => &mut self.d_pypy,
            "d_xy" => &mut self.d_xy,
            "d_xpy" => &mut self.d_xpy,
            "d_ypx" => &mut self.d_ypx,
            "d_pxpy" => &mut self.d_pxpy,
            _ => return None,
        })
    }

    pub fn check_finite(&self) -> Result<()> {
        for (field, value) in Self::FIELDS.iter().zip(self.values()) {
            if !value.is_finite() {
                return Err(Error::NonFinite { field });
            }
        }
        Ok(())
    }

    /// The complex Hermitian 4x4 coefficient matrix whose positivity is the
    /// complete-positivity condition of the dynamics.
    pub fn coefficient_matrix(&self) -> Matrix4<Complex<f64>> {
        let r = |v: f64| Complex::new(v, 0.0);
        let half = Complex::new(0.0, self.lambda / 2.0);
        Matrix4::new(
            r(self.d_xx),
            r(-self.d_xpx) - half,
            r(self.d_xy),
            r(-self.d_xpy),
            r(-self.d_xpx) + half,
            r(self.d_pxpx),
            r(-self.d_ypx),
            r(self.d_pxpy),
            r(self.d_xy),
            r(-self.d_ypx),
            r(self.d_yy),
            r(-self.d_ypy) - half,
            r(-self.d_xpy),
            r(self.d_pxpy),
            r(-self.d_ypy) + half,
            r(self.d_pypy),
        )
    }

    /// Whether the two single-oscillator blocks coincide and the coupling
    /// block is symmetric. Returns the first mismatching field on failure.
    pub fn symmetry_mismatch(&self, tol: f64) -> Option<&'static str> {
        let pairs = [
            ("d_yy", self.d_xx, self.d_yy),
            ("d_ypy", self.d_xpx, self.d_ypy),
            ("d_pypy", self.d_pxpx, self.d_pypy),
            ("d_ypx", self.d_xpy, self.d_ypx),
        ];
        pairs
            .into_iter()
            .find(|&(_, a, b)| !close(a, b, tol))
            .map(|(name, _, _)| name)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.symmetry_mismatch(tol).is_none()
    }

    /// Checks the Gibbs-type relations on top of the symmetry constraints.
    pub fn gibbs_mismatch(&self, osc: &OscillatorSpec, tol: f64) -> Option<&'static str> {
        if self.symmetry_mismatch(tol).is_some() {
            return Some("identical-oscillator symmetry");
        }
        let k = osc.m * osc.m * osc.omega * osc.omega;
        if !close(k * self.d_xx, self.d_pxpx, tol) {
            Some("m^2 omega^2 d_xx = d_pxpx")
        } else if !close(self.d_xpx, 0.0, tol) {
            Some("d_xpx = 0")
        } else if !close(k * self.d_xy, self.d_pxpy, tol) {
            Some("m^2 omega^2 d_xy = d_pxpy")
        } else {
            None
        }
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Environment with identical single-oscillator blocks and a symmetric
/// coupling block. Not validated.
pub fn symmetric_environment(
    lambda: f64,
    d_xx: f64,
    d_xpx: f64,
    d_pxpx: f64,
    d_xy: f64,
    d_xpy: f64,
    d_pxpy: f64,
) -> EnvironmentSpec {
    EnvironmentSpec {
        lambda,
        d_xx,
        d_xpx,
        d_pxpx,
        d_yy: d_xx,
        d_ypy: d_xpx,
        d_pypy: d_pxpx,
        d_xy,
        d_xpy,
        d_ypx: d_xpy,
        d_pxpy,
    }
}

/// Symmetric environment whose asymptotic single-mode state is thermal:
/// `d_pxpx = m^2 omega^2 d_xx`, `d_xpx = 0`, `d_pxpy = m^2 omega^2 d_xy`.
pub fn gibbs_environment(
    osc: &OscillatorSpec,
    lambda: f64,
    d_xx: f64,
    d_xy: f64,
    d_xpy: f64,
) -> EnvironmentSpec {
    let k = osc.m * osc.m * osc.omega * osc.omega;
    symmetric_environment(lambda, d_xx, 0.0, k * d_xx, d_xy, d_xpy, k * d_xy)
}

/// A named validity constraint on the environment coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    DissipationPositive,
    MinorXPx,
    MinorYPy,
    MinorXY,
    MinorXPy,
    MinorYPx,
    MinorPxPy,
    /// Smallest eigenvalue of the full Hermitian coefficient matrix.
    PositiveSemidefinite,
}

impl Constraint {
    pub fn name(self) -> &'static str {
        match self {
            Constraint::DissipationPositive => "lambda > 0",
            Constraint::MinorXPx => "d_xx*d_pxpx - d_xpx^2 >= lambda^2/4",
            Constraint::MinorYPy => "d_yy*d_pypy - d_ypy^2 >= lambda^2/4",
            Constraint::MinorXY => "d_xx*d_yy - d_xy^2 >= 0",
            Constraint::MinorXPy => "d_xx*d_pypy - d_xpy^2 >= 0",
            Constraint::MinorYPx => "d_yy*d_pxpx - d_ypx^2 >= 0",
            Constraint::MinorPxPy => "d_pxpx*d_pypy - d_pxpy^2 >= 0",
            Constraint::PositiveSemidefinite => "coefficient matrix positive semidefinite",
        }
    }

    pub fn is_minor(self) -> bool {
        !matches!(
            self,
            Constraint::DissipationPositive | Constraint::PositiveSemidefinite
        )
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A violated constraint together with `lhs - rhs` (negative when violated).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub constraint: Constraint,
    pub residual: f64,
}

/// Which constraints an environment must satisfy to be accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Positivity {
    /// `lambda > 0`, the six two-by-two minors, and full positivity of the
    /// Hermitian coefficient matrix.
    #[default]
    Full,
    /// `lambda > 0` and the six two-by-two minors only.
    Minors,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Smallest eigenvalue of the Hermitian coefficient matrix.
    pub min_eigenvalue: f64,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_ok_under(&self, positivity: Positivity) -> bool {
        match positivity {
            Positivity::Full => self.is_ok(),
            Positivity::Minors => self
                .violations
                .iter()
                .all(|v| v.constraint == Constraint::PositiveSemidefinite),
        }
    }

    pub fn violates(&self, constraint: Constraint) -> bool {
        self.violations.iter().any(|v| v.constraint == constraint)
    }
}

/// Checks the complete-positivity constraints on an environment.
///
/// Each two-by-two minor is reported separately from the full eigenvalue
/// check so a failing environment names the offending coefficients.
pub fn validate_environment(env: &EnvironmentSpec, tol: f64) -> Result<ValidationReport> {
    env.check_finite()?;
    if !tol.is_finite() {
        return Err(Error::NonFinite { field: "tol" });
    }
    let quarter_l2 = env.lambda * env.lambda / 4.0;
    let checks = [
        (Constraint::DissipationPositive, env.lambda),
        (
            Constraint::MinorXPx,
            env.d_xx * env.d_pxpx - env.d_xpx * env.d_xpx - quarter_l2,
        ),
        (
            Constraint::MinorYPy,
            env.d_yy * env.d_pypy - env.d_ypy * env.d_ypy - quarter_l2,
        ),
        (
            Constraint::MinorXY,
            env.d_xx * env.d_yy - env.d_xy * env.d_xy,
        ),
        (
            Constraint::MinorXPy,
            env.d_xx * env.d_pypy - env.d_xpy * env.d_xpy,
        ),
        (
            Constraint::MinorYPx,
            env.d_yy * env.d_pxpx - env.d_ypx * env.d_ypx,
        ),
        (
            Constraint::MinorPxPy,
            env.d_pxpx * env.d_pypy - env.d_pxpy * env.d_pxpy,
        ),
    ];
    let mut violations: Vec<Violation> = checks
        .into_iter()
        .filter(|&(constraint, residual)| match constraint {
            Constraint::DissipationPositive => residual <= 0.0,
            _ => residual < -tol,
        })
        .map(|(constraint, residual)| Violation {
            constraint,
            residual,
        })
        .collect();

    let min_eigenvalue = SymmetricEigen::new(env.coefficient_matrix())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -tol {
        violations.push(Violation {
            constraint: Constraint::PositiveSemidefinite,
            residual: min_eigenvalue,
        });
    }
    Ok(ValidationReport {
        violations,
        min_eigenvalue,
    })
}

/// Real symmetric 4x4 covariance matrix in `(x, p_x, y, p_y)` ordering.
///
/// Symmetry is exact by construction. Positivity and the uncertainty
/// principle are not enforced here; see [`check_physical`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix4<f64>);

/// Row-major upper-triangle index pairs used by [`CovarianceMatrix::from_upper`].
pub const UPPER_INDICES: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

impl CovarianceMatrix {
    /// Builds from the ten upper-triangle entries
    /// `xx, xpx, xy, xpy, pxpx, ypx, pxpy, yy, ypy, pypy`.
    pub fn from_upper(upper: [f64; 10]) -> Self {
        let mut m = Matrix4::zeros();
        for (&(i, j), v) in UPPER_INDICES.iter().zip(upper) {
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
        Self(m)
    }

    /// Accepts a full matrix if it is finite and symmetric within `tol`
    /// (relative to the largest entry), then symmetrizes it.
    pub fn from_matrix(m: Matrix4<f64>, tol: f64) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                field: "covariance",
            });
        }
        let asym = (m - m.transpose()).amax();
        if asym > tol * m.amax().max(1.0) {
            return Err(Error::NotSymmetric {
                max_asymmetry: asym,
            });
        }
        Ok(Self::symmetrized(&m))
    }

    /// `(m + m^T) / 2`, with no tolerance check.
    pub fn symmetrized(m: &Matrix4<f64>) -> Self {
        Self((m + m.transpose()) * 0.5)
    }

    pub fn vacuum() -> Self {
        Self(Matrix4::identity() * 0.5)
    }

    /// Product state with `sigma_xx = 1`, `sigma_pxpx = 1/2` in each mode.
    pub fn separable_product() -> Self {
        Self::from_upper([1.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 1.0, 0.0, 0.5])
    }

    /// [`separable_product`](Self::separable_product) plus cross correlations
    /// `sigma_xy = 1/2`, `sigma_pxpy = -1/2`. Singular (`det = 0`), so it
    /// violates the two-mode uncertainty relation.
    pub fn correlated_product() -> Self {
        Self::from_upper([1.0, 0.0, 0.5, 0.0, 0.5, 0.0, -0.5, 1.0, 0.0, 0.5])
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn upper(&self) -> [f64; 10] {
        UPPER_INDICES.map(|(i, j)| self.0[(i, j)])
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Applies `S sigma S^T`.
    pub fn congruence(&self, s: &Matrix4<f64>) -> Self {
        Self::symmetrized(&(s * self.0 * s.transpose()))
    }

    /// Exchanges the roles of the two oscillators.
    pub fn swap_modes(&self) -> Self {
        let mut p = Matrix4::zeros();
        p[(0, 2)] = 1.0;
        p[(1, 3)] = 1.0;
        p[(2, 0)] = 1.0;
        p[(3, 1)] = 1.0;
        self.congruence(&p)
    }

    /// Partial transpose of the second mode (`p_y -> -p_y`).
    pub fn partial_transpose(&self) -> Self {
        let mut m = self.0;
        for k in 0..4 {
            if k != 3 {
                m[(k, 3)] = -m[(k, 3)];
                m[(3, k)] = -m[(3, k)];
            }
        }
        Self(m)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.0)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn blocks(&self) -> TwoModeBlocks {
        blocks(self)
    }
}

/// `sigma = [[A, C], [C^T, B]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeBlocks {
    pub a: Matrix2<f64>,
    pub b: Matrix2<f64>,
    pub c: Matrix2<f64>,
}

impl TwoModeBlocks {
    pub fn reassemble(&self) -> CovarianceMatrix {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.c);
        m.fixed_view_mut::<2, 2>(2, 0)
            .copy_from(&self.c.transpose());
        CovarianceMatrix(m)
    }

    /// `det A + det B + 2 det C`, the two-mode symplectic invariant.
    pub fn seralian(&self) -> f64 {
        self.a.determinant() + self.b.determinant() + 2.0 * self.c.determinant()
    }
}

pub fn blocks(sigma: &CovarianceMatrix) -> TwoModeBlocks {
    let m = sigma.matrix();
    TwoModeBlocks {
        a: m.fixed_view::<2, 2>(0, 0).into_owned(),
        b: m.fixed_view::<2, 2>(2, 2).into_owned(),
        c: m.fixed_view::<2, 2>(0, 2).into_owned(),
    }
}

/// Outcome of the uncertainty-principle gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    /// `[nu_minus, nu_plus]`, ascending.
    pub symplectic_eigenvalues: [f64; 2],
    pub is_physical: bool,
    /// `nu_minus - 1/2`.
    pub min_margin: f64,
}

/// Symplectic eigenvalues from the invariants `Delta = det A + det B + 2 det C`
/// and `det sigma`: `nu^2 = (Delta -/+ sqrt(Delta^2 - 4 det sigma)) / 2`.
/// Negative intermediate values (only possible for non-positive matrices)
/// are clamped to zero.
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> [f64; 2] {
    let delta = blocks(sigma).seralian();
    let det = sigma.determinant();
    let disc = libm::sqrt((delta * delta - 4.0 * det).max(0.0));
    let lo = ((delta - disc) / 2.0).max(0.0);
    let hi = ((delta + disc) / 2.0).max(0.0);
    [libm::sqrt(lo), libm::sqrt(hi)]
}

/// Uncertainty-principle check: physical iff `sigma` is positive semidefinite
/// and its smaller symplectic eigenvalue is at least `1/2 - tol`.
pub fn check_physical(sigma: &CovarianceMatrix, tol: f64) -> PhysicalityReport {
    let nu = symplectic_eigenvalues(sigma);
    let min_margin = nu[0] - 0.5;
    let is_physical = min_margin >= -tol && sigma.min_eigenvalue() >= -tol;
    PhysicalityReport {
        symplectic_eigenvalues: nu,
        is_physical,
        min_margin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reference_environment() -> EnvironmentSpec {
        symmetric_environment(0.2, 0.11, 0.0, 0.11, 0.0, 0.1, 0.0)
    }

    #[test]
    fn oscillator_rejects_non_positive() {
        assert!(OscillatorSpec::new(1.0, 1.0).is_ok());
        assert!(matches!(
            OscillatorSpec::new(0.0, 1.0),
            Err(Error::InvalidOscillator { field: "m", .. })
        ));
        assert!(matches!(
            OscillatorSpec::new(1.0, f64::NAN),
            Err(Error::NonFinite { field: "omega" })
        ));
    }

    #[test]
    fn minors_pass_but_full_positivity_fails_for_strong_coupling() {
        let report = validate_environment(&reference_environment(), 1e-12).unwrap();
        assert!(report.violations.iter().all(|v| !v.constraint.is_minor()));
        assert!(report.is_ok_under(Positivity::Minors));
        // Eigenvalues are d_xx -/+ sqrt(lambda^2/4 + d_xpy^2).
        let expected = 0.11 - libm::sqrt(0.01 + 0.01);
        assert_abs_diff_eq!(report.min_eigenvalue, expected, epsilon = 1e-14);
        assert!(report.violates(Constraint::PositiveSemidefinite));
        assert!(!report.is_ok());
    }

    #[test]
    fn weak_coupling_is_fully_valid() {
        let env = symmetric_environment(0.2, 0.11, 0.0, 0.11, 0.0, 0.04, 0.0);
        let report = validate_environment(&env, 1e-12).unwrap();
        assert!(report.is_ok(), "{report:?}");
    }

    #[test]
    fn dissipation_dominating_diffusion_is_rejected() {
        let env = symmetric_environment(0.5, 0.11, 0.0, 0.11, 0.0, 0.0, 0.0);
        let report = validate_environment(&env, 1e-12).unwrap();
        let v = report
            .violations
            .iter()
            .find(|v| v.constraint == Constraint::MinorXPx)
            .unwrap();
        assert_abs_diff_eq!(v.residual, 0.0121 - 0.0625, epsilon = 1e-15);
        assert!(report.violates(Constraint::MinorYPy));
    }

    #[test]
    fn zero_diffusion_violates_both_dissipation_minors() {
        let env = EnvironmentSpec {
            lambda: 0.2,
            ..Default::default()
        };
        let report = validate_environment(&env, 1e-12).unwrap();
        assert!(report.violates(Constraint::MinorXPx));
        assert!(report.violates(Constraint::MinorYPy));
        assert!(!report.violates(Constraint::MinorXY));
    }

    #[test]
    fn non_positive_lambda_is_named() {
        let env = symmetric_environment(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0);
        let report = validate_environment(&env, 1e-9).unwrap();
        assert!(report.violates(Constraint::DissipationPositive));
    }

    #[test]
    fn non_finite_is_an_error_not_a_violation() {
        let mut env = reference_environment();
        env.d_pxpy = f64::INFINITY;
        assert_eq!(
            validate_environment(&env, 1e-9),
            Err(Error::NonFinite { field: "d_pxpy" })
        );
    }

    #[test]
    fn symmetric_environment_copies_fields() {
        let env = symmetric_environment(0.2, 0.11, 0.0, 0.11, 0.0, 0.1, 0.0);
        assert_eq!(env.d_yy, 0.11);
        assert_eq!(env.d_ypy, 0.0);
        assert_eq!(env.d_pypy, 0.11);
        assert_eq!(env.d_ypx, 0.1);
        assert!(env.is_symmetric(0.0));
    }

    #[test]
    fn gibbs_environment_scales_momentum_coefficients() {
        let osc = OscillatorSpec::new(2.0, 3.0).unwrap();
        let env = gibbs_environment(&osc, 1.0, 0.5, 0.1, 0.0);
        assert_abs_diff_eq!(env.d_pxpx, 18.0, epsilon = 1e-12);
        assert_abs_diff_eq!(env.d_pxpy, 3.6, epsilon = 1e-12);
        assert_eq!(env.d_xpx, 0.0);
        assert_eq!(env.d_pypy, env.d_pxpx);
        assert!(env.gibbs_mismatch(&osc, 1e-12).is_none());

        let unit = gibbs_environment(&OscillatorSpec::unit(), 0.2, 0.11, 0.0, 0.1);
        assert_eq!(unit.d_pxpx, 0.11);
        assert_eq!(unit.d_pxpy, 0.0);
    }

    #[test]
    fn weak_gibbs_environment_fails_validation() {
        let env = gibbs_environment(&OscillatorSpec::unit(), 0.2, 0.09, 0.0, 0.0);
        let report = validate_environment(&env, 1e-12).unwrap();
        let v = report.violations[0];
        assert_eq!(v.constraint, Constraint::MinorXPx);
        assert_abs_diff_eq!(v.residual, 0.0081 - 0.01, epsilon = 1e-15);
    }

    #[test]
    fn symmetry_mismatch_names_field() {
        let mut env = reference_environment();
        env.d_ypx = 0.2;
        assert_eq!(env.symmetry_mismatch(1e-12), Some("d_ypx"));
    }

    #[test]
    fn blocks_of_presets() {
        let v = blocks(&CovarianceMatrix::vacuum());
        assert_eq!(v.a, Matrix2::identity() * 0.5);
        assert_eq!(v.b, Matrix2::identity() * 0.5);
        assert_eq!(v.c, Matrix2::zeros());

        let f3 = blocks(&CovarianceMatrix::correlated_product());
        assert_eq!(f3.a, Matrix2::new(1.0, 0.0, 0.0, 0.5));
        assert_eq!(f3.b, f3.a);
        assert_eq!(f3.c, Matrix2::new(0.5, 0.0, 0.0, -0.5));

        let f2 = blocks(&CovarianceMatrix::separable_product());
        assert_eq!(f2.a, Matrix2::new(1.0, 0.0, 0.0, 0.5));
        assert_eq!(f2.c, Matrix2::zeros());
    }

    #[test]
    fn from_matrix_rejects_asymmetry() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = 0.1;
        assert!(matches!(
            CovarianceMatrix::from_matrix(m, 1e-9),
            Err(Error::NotSymmetric { .. })
        ));
        m[(1, 0)] = 0.1;
        assert!(CovarianceMatrix::from_matrix(m, 1e-9).is_ok());
    }

    #[test]
    fn physicality_of_presets() {
        let vac = check_physical(&CovarianceMatrix::vacuum(), DEFAULT_TOL);
        assert_abs_diff_eq!(vac.symplectic_eigenvalues[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(vac.symplectic_eigenvalues[1], 0.5, epsilon = 1e-15);
        assert!(vac.is_physical);

        let f2 = check_physical(&CovarianceMatrix::separable_product(), DEFAULT_TOL);
        let r = libm::sqrt(0.5);
        assert_abs_diff_eq!(f2.symplectic_eigenvalues[0], r, epsilon = 1e-12);
        assert_abs_diff_eq!(f2.symplectic_eigenvalues[1], r, epsilon = 1e-12);
        assert!(f2.is_physical);

        let f3 = check_physical(&CovarianceMatrix::correlated_product(), DEFAULT_TOL);
        assert_eq!(CovarianceMatrix::correlated_product().determinant(), 0.0);
        assert!(f3.symplectic_eigenvalues[0].abs() < 1e-7);
        assert!(!f3.is_physical);
    }

    #[test]
    fn upper_round_trip() {
        let u = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
        let s = CovarianceMatrix::from_upper(u);
        assert_eq!(s.upper(), u);
        assert_eq!(s.get(2, 1), 6.0);
    }
}
