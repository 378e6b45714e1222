//! Separability and entanglement strength of two-mode Gaussian states, plus
//! the closed-form asymptotic quantities for symmetric environments.

use nalgebra::{Complex, Matrix2, Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::{
    blocks, CovarianceMatrix, EnvironmentSpec, OscillatorSpec, TwoModeBlocks, DEFAULT_TOL,
};

/// `|S|` at or below this is classified as [`Verdict::Boundary`].
pub const SIMON_ZERO_BAND: f64 = 1e-12;

/// Allowed disagreement between `f(sigma)` and the squared smallest
/// partial-transpose symplectic eigenvalue, relative to `max(1, scale)`,
/// on top of the square-root rounding near a degenerate spectrum.
pub const NEGATIVITY_CONSISTENCY_TOL: f64 = 1e-10;

/// Tolerance on the coefficient relations required by the closed forms.
const STRUCTURE_TOL: f64 = 1e-12;

const J: Matrix2<f64> = Matrix2::new(0.0, 1.0, -1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Separable,
    /// `|S| <= SIMON_ZERO_BAND`. Separable by the `S >= 0` rule.
    Boundary,
    Entangled,
}

impl Verdict {
    pub fn from_simon(s: f64) -> Self {
        if s.abs() <= SIMON_ZERO_BAND {
            Verdict::Boundary
        } else if s < 0.0 {
            Verdict::Entangled
        } else {
            Verdict::Separable
        }
    }

    pub fn is_entangled(self) -> bool {
        self == Verdict::Entangled
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Boundary => "boundary",
            Verdict::Entangled => "entangled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimonValue {
    pub s: f64,
    pub verdict: Verdict,
}

/// Simon's separability function
/// `S = det A det B + (1/4 - |det C|)^2 - Tr[A J C J B J C^T J] - (det A + det B)/4`.
/// The state is separable iff `S >= 0`.
pub fn simon_s(sigma: &CovarianceMatrix) -> SimonValue {
    let TwoModeBlocks { a, b, c } = blocks(sigma);
    let (det_a, det_b, det_c) = (a.determinant(), b.determinant(), c.determinant());
    let quarter = 0.25 - det_c.abs();
    let trace = (a * J * c * J * b * J * c.transpose() * J).trace();
    let s = det_a * det_b + quarter * quarter - trace - 0.25 * (det_a + det_b);
    SimonValue {
        s,
        verdict: Verdict::from_simon(s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityValue {
    /// Logarithmic negativity in bits, `-log2(4 f) / 2`. Entangled iff `> 0`.
    pub e: f64,
    pub f: f64,
    /// Smallest symplectic eigenvalue of the partially transposed covariance.
    pub nu_tilde_minus: f64,
    /// `f` fell in `[-tol, 0]` and was clamped to zero; `e` is `+inf`.
    pub clamped: bool,
}

impl NegativityValue {
    pub fn is_entangled(&self) -> bool {
        self.e > 0.0
    }
}

/// `f(sigma) = h - sqrt(h^2 - det sigma)` with `h = (det A + det B)/2 - det C`.
///
/// The discriminant is expanded in block invariants,
/// `(det A - det B)^2 / 4 - det C (det A + det B) + Tr[A J C J B J C^T J]`,
/// which is exact when `C = 0` and avoids the 4x4 determinant.
pub fn negativity_f(sigma: &CovarianceMatrix, tol: f64) -> Result<f64> {
    let (h, disc) = negativity_invariants(sigma);
    if disc < -tol {
        return Err(Error::NegativeDiscriminant { value: disc });
    }
    Ok(h - libm::sqrt(disc.max(0.0)))
}

fn negativity_invariants(sigma: &CovarianceMatrix) -> (f64, f64) {
    let TwoModeBlocks { a, b, c } = blocks(sigma);
    let (det_a, det_b, det_c) = (a.determinant(), b.determinant(), c.determinant());
    let h = 0.5 * (det_a + det_b) - det_c;
    let half_gap = 0.5 * (det_a - det_b);
    let trace = (a * J * c * J * b * J * c.transpose() * J).trace();
    (h, half_gap * half_gap - det_c * (det_a + det_b) + trace)
}

/// Rounding error carried into `f` by the square root of a discriminant
/// known only to about `16 eps h^2`. Largest when the two partial-transpose
/// symplectic eigenvalues coincide.
fn sqrt_rounding(h: f64, disc: f64) -> f64 {
    let d = disc.max(0.0);
    let err = 16.0 * f64::EPSILON * h * h;
    libm::sqrt(d + err) - libm::sqrt(d)
}

/// Symplectic spectrum `[nu_minus, nu_plus]` of `sigma`, computed as the
/// eigenvalues of the Hermitian matrix `sigma^{1/2} (i Omega) sigma^{1/2}`,
/// which come in `+/-` pairs.
pub fn symplectic_spectrum(sigma: &CovarianceMatrix, tol: f64) -> Result<[f64; 2]> {
    let eig = SymmetricEigen::new(*sigma.matrix());
    let min = eig.eigenvalues.min();
    if min < -tol * eig.eigenvalues.amax().max(1.0) {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let sqrt_w = eig.eigenvalues.map(|w| libm::sqrt(w.max(0.0)));
    let root = eig.eigenvectors * Matrix4::from_diagonal(&sqrt_w) * eig.eigenvectors.transpose();

    let mut omega = Matrix4::<f64>::zeros();
    omega.fixed_view_mut::<2, 2>(0, 0).copy_from(&J);
    omega.fixed_view_mut::<2, 2>(2, 2).copy_from(&J);
    let root_c = root.map(|v| Complex::new(v, 0.0));
    let i_omega = omega.map(|v| Complex::new(0.0, v));
    let h = root_c * i_omega * root_c;

    let mut w: [f64; 4] = SymmetricEigen::new(h).eigenvalues.into();
    w.sort_by(f64::total_cmp);
    Ok([0.5 * (w[2] - w[1]), 0.5 * (w[3] - w[0])])
}

/// `[nu_tilde_minus, nu_tilde_plus]`: symplectic spectrum of the partial
/// transpose (`p_y -> -p_y`).
pub fn pt_symplectic_spectrum(sigma: &CovarianceMatrix, tol: f64) -> Result<[f64; 2]> {
    symplectic_spectrum(&sigma.partial_transpose(), tol)
}

/// Logarithmic negativity with the default tolerance.
pub fn log_negativity(sigma: &CovarianceMatrix) -> Result<NegativityValue> {
    log_negativity_with_tol(sigma, DEFAULT_TOL)
}

/// Logarithmic negativity `E = -log2(4 f(sigma)) / 2`.
///
/// `f` is evaluated from the block determinants and checked against the
/// partial-transpose symplectic spectrum (`f = nu_tilde_minus^2`). Values of
/// `f` in `[-tol, 0]` are clamped to zero and flagged; below `-tol` the
/// covariance is rejected as degenerate.
pub fn log_negativity_with_tol(sigma: &CovarianceMatrix, tol: f64) -> Result<NegativityValue> {
    let f = negativity_f(sigma, tol)?;
    let [nu, _] = pt_symplectic_spectrum(sigma, tol)?;
    let nu_squared = nu * nu;
    let scale = f.abs().max(nu_squared).max(1.0);
    let (h, disc) = negativity_invariants(sigma);
    if (f - nu_squared).abs() > NEGATIVITY_CONSISTENCY_TOL * scale + sqrt_rounding(h, disc) {
        return Err(Error::NegativityMismatch { f, nu_squared });
    }
    if f < -tol {
        return Err(Error::DegenerateCovariance { f });
    }
    if f <= 0.0 {
        return Ok(NegativityValue {
            e: f64::INFINITY,
            f: 0.0,
            nu_tilde_minus: nu,
            clamped: true,
        });
    }
    Ok(NegativityValue {
        e: -0.5 * libm::log2(4.0 * f),
        f,
        nu_tilde_minus: nu,
        clamped: false,
    })
}

fn require_symmetric(env: &EnvironmentSpec) -> Result<()> {
    match env.symmetry_mismatch(STRUCTURE_TOL) {
        Some(field) => Err(Error::NotSymmetricEnvironment { field }),
        None => Ok(()),
    }
}

fn require_gibbs(osc: &OscillatorSpec, env: &EnvironmentSpec) -> Result<()> {
    require_symmetric(env)?;
    match env.gibbs_mismatch(osc, STRUCTURE_TOL) {
        Some(condition) => Err(Error::NotGibbsEnvironment { condition }),
        None => Ok(()),
    }
}

fn require_lambda(env: &EnvironmentSpec) -> Result<()> {
    if env.lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::NotHurwitz { lambda: env.lambda })
    }
}

/// Stationary `(sigma_qq', sigma_qp', sigma_pp')` generated by the diffusion
/// coefficients `(d_qq', d_qp', d_pp')` of a symmetric environment.
fn stationary_correlations(
    osc: &OscillatorSpec,
    lambda: f64,
    d_qq: f64,
    d_qp: f64,
    d_pp: f64,
) -> Matrix2<f64> {
    let (m, w, l) = (osc.m, osc.omega, lambda);
    let q = l * l + w * w;
    let s_qq =
        (m * m * (2.0 * l * l + w * w) * d_qq + 2.0 * m * l * d_qp + d_pp) / (2.0 * m * m * l * q);
    let s_qp = (-m * m * w * w * d_qq + 2.0 * m * l * d_qp + d_pp) / (2.0 * m * q);
    let s_pp = (m * m * w * w * w * w * d_qq - 2.0 * m * w * w * l * d_qp
        + (2.0 * l * l + w * w) * d_pp)
        / (2.0 * l * q);
    Matrix2::new(s_qq, s_qp, s_qp, s_pp)
}

/// Closed-form asymptotic cross-correlation block `C(inf)`.
pub fn asymptotic_c_block(osc: &OscillatorSpec, env: &EnvironmentSpec) -> Result<Matrix2<f64>> {
    require_symmetric(env)?;
    require_lambda(env)?;
    Ok(stationary_correlations(
        osc, env.lambda, env.d_xy, env.d_xpy, env.d_pxpy,
    ))
}

/// Closed-form asymptotic single-mode block `A(inf) = B(inf)`.
pub fn asymptotic_a_block(osc: &OscillatorSpec, env: &EnvironmentSpec) -> Result<Matrix2<f64>> {
    require_symmetric(env)?;
    require_lambda(env)?;
    Ok(stationary_correlations(
        osc, env.lambda, env.d_xx, env.d_xpx, env.d_pxpx,
    ))
}

/// Closed-form asymptotic covariance assembled from
/// [`asymptotic_a_block`] and [`asymptotic_c_block`].
pub fn asymptotic_covariance(
    osc: &OscillatorSpec,
    env: &EnvironmentSpec,
) -> Result<CovarianceMatrix> {
    let a = asymptotic_a_block(osc, env)?;
    let c = asymptotic_c_block(osc, env)?;
    Ok(TwoModeBlocks { a, b: a, c }.reassemble())
}

/// `det C(inf) = [(m w^2 d_xy + d_pxpy / m)^2 + 4 lambda^2 (d_xy d_pxpy - d_xpy^2)]
///  / (4 lambda^2 (lambda^2 + w^2))`.
pub fn asymptotic_det_c(osc: &OscillatorSpec, env: &EnvironmentSpec) -> Result<f64> {
    require_symmetric(env)?;
    require_lambda(env)?;
    let (m, w, l) = (osc.m, osc.omega, env.lambda);
    let mix = m * w * w * env.d_xy + env.d_pxpy / m;
    let num = mix * mix + 4.0 * l * l * (env.d_xy * env.d_pxpy - env.d_xpy * env.d_xpy);
    Ok(num / (4.0 * l * l * (l * l + w * w)))
}

/// Asymptotic Simon function for a Gibbs-type environment.
///
/// Only valid where `det C(inf) <= 0`; outside that range the closed form
/// drops the absolute value in `|det C|` and is rejected.
pub fn asymptotic_simon_gibbs(osc: &OscillatorSpec, env: &EnvironmentSpec) -> Result<f64> {
    require_gibbs(osc, env)?;
    require_lambda(env)?;
    if asymptotic_det_c(osc, env)? > 0.0 {
        return Err(Error::OutsideClosedFormDomain {
            condition: "det C(inf) <= 0",
        });
    }
    let (m, w, l) = (osc.m, osc.omega, env.lambda);
    let (dxx, dxy, dxpy) = (env.d_xx, env.d_xy, env.d_xpy);
    let mw2 = m * m * w * w;
    let q = l * l + w * w;
    let inner = mw2 * (dxx * dxx - dxy * dxy) / (l * l) + dxpy * dxpy / q - 0.25;
    Ok(inner * inner - 4.0 * mw2 * dxx * dxx * dxpy * dxpy / (l * l * q))
}

/// Open interval of `d_xpy` for which the asymptotic state is entangled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementInterval {
    pub lo: f64,
    pub hi: f64,
}

impl EntanglementInterval {
    pub fn contains(&self, d_xpy: f64) -> bool {
        self.lo < d_xpy && d_xpy < self.hi
    }
}

/// For a Gibbs-type environment with `d_xy = 0`, the asymptotic state is
/// entangled iff
/// `sqrt(l^2 + w^2) (m w d_xx / l - 1/2) < d_xpy < sqrt(l^2 + w^2) (m w d_xx / l + 1/2)`.
///
/// Requires `m w d_xx / l >= 1/2`. The caller must still respect the
/// positivity constraints of the environment, which bound `d_xpy` above.
pub fn entanglement_interval(
    osc: &OscillatorSpec,
    env: &EnvironmentSpec,
) -> Result<EntanglementInterval> {
    require_gibbs(osc, env)?;
    require_lambda(env)?;
    if env.d_xy.abs() > STRUCTURE_TOL {
        return Err(Error::OutsideClosedFormDomain {
            condition: "d_xy = 0",
        });
    }
    let ratio = osc.m * osc.omega * env.d_xx / env.lambda;
    if ratio < 0.5 {
        return Err(Error::UnimodalCondition { value: ratio });
    }
    let q = libm::sqrt(env.lambda * env.lambda + osc.omega * osc.omega);
    Ok(EntanglementInterval {
        lo: q * (ratio - 0.5),
        hi: q * (ratio + 0.5),
    })
}

/// `E(inf) = -log2(2 |m w d_xx / l - d_xpy / sqrt(l^2 + w^2)|)` for a
/// Gibbs-type environment with `d_xy = 0` and `d_xpy >= 0`.
pub fn asymptotic_negativity(osc: &OscillatorSpec, env: &EnvironmentSpec) -> Result<f64> {
    require_gibbs(osc, env)?;
    require_lambda(env)?;
    if env.d_xy.abs() > STRUCTURE_TOL {
        return Err(Error::OutsideClosedFormDomain {
            condition: "d_xy = 0",
        });
    }
    if env.d_xpy < 0.0 {
        return Err(Error::OutsideClosedFormDomain {
            condition: "d_xpy >= 0",
        });
    }
    let (m, w, l) = (osc.m, osc.omega, env.lambda);
    let gap = m * w * env.d_xx / l - env.d_xpy / libm::sqrt(l * l + w * w);
    Ok(-libm::log2(2.0 * gap.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Dynamics;
    use crate::model::gibbs_environment;
    use approx::assert_abs_diff_eq;

    fn reference() -> (OscillatorSpec, EnvironmentSpec) {
        let osc = OscillatorSpec::unit();
        (osc, gibbs_environment(&osc, 0.2, 0.11, 0.0, 0.1))
    }

    fn two_mode_squeezed() -> CovarianceMatrix {
        CovarianceMatrix::from_upper([
            0.625, 0.0, 0.375, 0.0, 0.625, 0.0, -0.375, 0.625, 0.0, 0.625,
        ])
    }

    #[test]
    fn simon_hand_values() {
        assert_eq!(simon_s(&CovarianceMatrix::vacuum()).s, 0.0);
        assert_eq!(
            simon_s(&CovarianceMatrix::vacuum()).verdict,
            Verdict::Boundary
        );
        let s2 = simon_s(&CovarianceMatrix::separable_product());
        assert_abs_diff_eq!(s2.s, 0.0625, epsilon = 1e-14);
        assert_eq!(s2.verdict, Verdict::Separable);
        let s3 = simon_s(&CovarianceMatrix::correlated_product());
        assert_abs_diff_eq!(s3.s, -0.3125, epsilon = 1e-14);
        assert_eq!(s3.verdict, Verdict::Entangled);
    }

    #[test]
    fn vacuum_negativity_is_zero() {
        let n = log_negativity(&CovarianceMatrix::vacuum()).unwrap();
        assert_abs_diff_eq!(n.f, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(n.e, 0.0, epsilon = 1e-14);
        assert!(!n.is_entangled());
    }

    #[test]
    fn two_mode_squeezed_has_one_bit() {
        let n = log_negativity(&two_mode_squeezed()).unwrap();
        assert_abs_diff_eq!(n.f, 0.0625, epsilon = 1e-15);
        assert_abs_diff_eq!(n.nu_tilde_minus, 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(n.e, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn singular_state_is_clamped() {
        let n = log_negativity(&CovarianceMatrix::correlated_product()).unwrap();
        assert!(n.clamped);
        assert_eq!(n.e, f64::INFINITY);
        assert!(n.nu_tilde_minus < 1e-7);
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        let bad = CovarianceMatrix::from_upper([1.0, 0.0, 2.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);
        assert!(log_negativity(&bad).is_err());
    }

    #[test]
    fn symplectic_spectrum_of_product_state() {
        let [lo, hi] = symplectic_spectrum(&CovarianceMatrix::separable_product(), 1e-9).unwrap();
        assert_abs_diff_eq!(lo, libm::sqrt(0.5), epsilon = 1e-14);
        assert_abs_diff_eq!(hi, libm::sqrt(0.5), epsilon = 1e-14);
    }

    #[test]
    fn asymptotic_blocks_reference() {
        let (osc, env) = reference();
        let c = asymptotic_c_block(&osc, &env).unwrap();
        assert_abs_diff_eq!(c[(0, 0)], 0.096_154, epsilon = 1e-6);
        assert_abs_diff_eq!(c[(0, 1)], 0.019_231, epsilon = 1e-6);
        assert_abs_diff_eq!(c[(1, 0)], 0.019_231, epsilon = 1e-6);
        assert_abs_diff_eq!(c[(1, 1)], -0.096_154, epsilon = 1e-6);
        let det = asymptotic_det_c(&osc, &env).unwrap();
        assert_abs_diff_eq!(det, -0.01 / 1.04, epsilon = 1e-15);
        assert_abs_diff_eq!(det, c.determinant(), epsilon = 1e-12);

        let steady = *Dynamics::new(&osc, &env).unwrap().steady_state();
        let closed = asymptotic_covariance(&osc, &env).unwrap();
        assert_abs_diff_eq!(*closed.matrix(), *steady.matrix(), epsilon = 1e-12);
    }

    #[test]
    fn zero_coupling_gives_zero_c() {
        let osc = OscillatorSpec::unit();
        let env = gibbs_environment(&osc, 0.2, 0.11, 0.0, 0.0);
        assert_eq!(asymptotic_c_block(&osc, &env).unwrap(), Matrix2::zeros());
        assert_eq!(asymptotic_det_c(&osc, &env).unwrap(), 0.0);
    }

    #[test]
    fn asymptotic_simon_reference() {
        let (osc, env) = reference();
        let s = asymptotic_simon_gibbs(&osc, &env).unwrap();
        let inner = 0.55 * 0.55 + 0.01 / 1.04 - 0.25;
        let expected = inner * inner - 4.0 * 0.3025 * 0.01 / 1.04;
        assert_abs_diff_eq!(s, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(s, -0.007_776_3, epsilon = 1e-7);
        let generic = simon_s(Dynamics::new(&osc, &env).unwrap().steady_state()).s;
        assert_abs_diff_eq!(s, generic, epsilon = 1e-12);
    }

    #[test]
    fn asymptotic_simon_without_coupling_is_a_square() {
        let osc = OscillatorSpec::new(1.3, 0.7).unwrap();
        let env = gibbs_environment(&osc, 0.4, 0.5, 0.0, 0.0);
        let s = asymptotic_simon_gibbs(&osc, &env).unwrap();
        let k = 1.3f64 * 1.3 * 0.7 * 0.7;
        let r = k * 0.25 / 0.16 - 0.25;
        assert_abs_diff_eq!(s, r * r, epsilon = 1e-14);
        assert!(s >= 0.0);
    }

    #[test]
    fn closed_forms_check_preconditions() {
        let osc = OscillatorSpec::unit();
        let mut env = gibbs_environment(&osc, 0.2, 0.11, 0.0, 0.1);
        env.d_ypx = 0.05;
        assert!(matches!(
            asymptotic_c_block(&osc, &env),
            Err(Error::NotSymmetricEnvironment { field: "d_ypx" })
        ));
        let mut env = gibbs_environment(&osc, 0.2, 0.11, 0.0, 0.1);
        env.d_pxpx = 0.2;
        env.d_pypy = 0.2;
        assert!(matches!(
            asymptotic_simon_gibbs(&osc, &env),
            Err(Error::NotGibbsEnvironment { .. })
        ));
        let env = gibbs_environment(&osc, 0.2, 0.11, 0.05, 0.1);
        assert!(matches!(
            asymptotic_negativity(&osc, &env),
            Err(Error::OutsideClosedFormDomain { .. })
        ));
        let env = gibbs_environment(&osc, 0.2, 0.11, 0.0, -0.1);
        assert!(matches!(
            asymptotic_negativity(&osc, &env),
            Err(Error::OutsideClosedFormDomain { .. })
        ));
        // det C(inf) > 0 for large d_xy
        let env = gibbs_environment(&osc, 0.5, 1.0, 0.8, 0.0);
        assert!(asymptotic_det_c(&osc, &env).unwrap() > 0.0);
        assert!(matches!(
            asymptotic_simon_gibbs(&osc, &env),
            Err(Error::OutsideClosedFormDomain { .. })
        ));
    }

    #[test]
    fn interval_reference() {
        let (osc, env) = reference();
        let iv = entanglement_interval(&osc, &env).unwrap();
        let q = libm::sqrt(1.04);
        assert_abs_diff_eq!(iv.lo, 0.05 * q, epsilon = 1e-15);
        assert_abs_diff_eq!(iv.hi, 1.05 * q, epsilon = 1e-15);
        assert_abs_diff_eq!(iv.lo, 0.050_990, epsilon = 1e-6);
        assert_abs_diff_eq!(iv.hi, 1.070_794, epsilon = 1e-6);
        assert!(iv.contains(0.1));

        for d in [iv.lo, iv.hi] {
            let e = gibbs_environment(&osc, 0.2, 0.11, 0.0, d);
            assert!(asymptotic_simon_gibbs(&osc, &e).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn interval_requires_unimodal_condition() {
        let osc = OscillatorSpec::unit();
        let env = gibbs_environment(&osc, 0.2, 0.09, 0.0, 0.0);
        assert!(matches!(
            entanglement_interval(&osc, &env),
            Err(Error::UnimodalCondition { .. })
        ));
    }

    #[test]
    fn asymptotic_negativity_reference() {
        let (osc, env) = reference();
        let e = asymptotic_negativity(&osc, &env).unwrap();
        let expected = -libm::log2(2.0 * (0.55 - 0.1 / libm::sqrt(1.04)));
        assert_abs_diff_eq!(e, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(e, 0.145_790_7, epsilon = 1e-7);
        let generic = log_negativity(Dynamics::new(&osc, &env).unwrap().steady_state()).unwrap();
        assert_abs_diff_eq!(e, generic.e, epsilon = 1e-10);
    }

    #[test]
    fn asymptotic_negativity_at_unimodal_boundary_is_zero() {
        let osc = OscillatorSpec::unit();
        let env = gibbs_environment(&osc, 0.2, 0.1, 0.0, 0.0);
        assert_abs_diff_eq!(
            asymptotic_negativity(&osc, &env).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn degenerate_pt_spectrum_is_consistent() {
        let env = crate::model::symmetric_environment(0.5, 0.4, 0.0, 0.4, 0.0, 0.0, 0.0);
        let steady = *Dynamics::new(&OscillatorSpec::unit(), &env)
            .unwrap()
            .steady_state();
        let n = log_negativity(&steady).unwrap();
        assert_abs_diff_eq!(n.nu_tilde_minus, 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(n.f, 0.64, epsilon = 1e-7);
        assert!(n.e < 0.0);
    }
}
