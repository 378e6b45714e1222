//! Random generators for physical covariances, symplectic maps and valid
//! environments. Shared by the integration and acceptance tests.

#![allow(dead_code)]

use gaussdyn_core::{
    gibbs_environment, validate_environment, CovarianceMatrix, EnvironmentSpec, OscillatorSpec,
};
use nalgebra::{Matrix2, Matrix4};
use rand::Rng;

pub fn rotation2(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, s, -s, c)
}

/// Random 2x2 matrix with unit determinant.
pub fn random_symplectic2<R: Rng>(rng: &mut R) -> Matrix2<f64> {
    let squeeze = rng.random_range(-0.5..0.5f64).exp();
    let shear = rng.random_range(-0.5..0.5);
    rotation2(rng.random_range(0.0..6.3))
        * Matrix2::new(squeeze, 0.0, 0.0, 1.0 / squeeze)
        * Matrix2::new(1.0, shear, 0.0, 1.0)
        * rotation2(rng.random_range(0.0..6.3))
}

pub fn direct_sum(s1: &Matrix2<f64>, s2: &Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(s1);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(s2);
    m
}

/// Two-mode symplectic map built from beam splitters, two-mode squeezers and
/// local symplectic maps.
pub fn random_symplectic4<R: Rng>(rng: &mut R) -> Matrix4<f64> {
    let mut s = direct_sum(&random_symplectic2(rng), &random_symplectic2(rng));
    for _ in 0..2 {
        let theta: f64 = rng.random_range(0.0..6.3);
        let (sn, cs) = theta.sin_cos();
        #[rustfmt::skip]
        let splitter = Matrix4::new(
            cs, 0.0, sn, 0.0,
            0.0, cs, 0.0, sn,
            -sn, 0.0, cs, 0.0,
            0.0, -sn, 0.0, cs,
        );
        let r: f64 = rng.random_range(-0.5..0.5);
        let (ch, sh) = (r.cosh(), r.sinh());
        #[rustfmt::skip]
        let squeezer = Matrix4::new(
            ch, 0.0, sh, 0.0,
            0.0, ch, 0.0, -sh,
            sh, 0.0, ch, 0.0,
            0.0, -sh, 0.0, ch,
        );
        s = splitter * squeezer * s;
        s = direct_sum(&random_symplectic2(rng), &random_symplectic2(rng)) * s;
    }
    s
}

/// `S diag(nu1, nu1, nu2, nu2) S^T` with `nu >= 1/2`.
pub fn random_physical_covariance<R: Rng>(rng: &mut R) -> CovarianceMatrix {
    let nu1 = 0.5 + rng.random_range(0.0..1.0);
    let nu2 = 0.5 + rng.random_range(0.0..1.0);
    let williamson = Matrix4::from_diagonal(&nalgebra::Vector4::new(nu1, nu1, nu2, nu2));
    let s = random_symplectic4(rng);
    CovarianceMatrix::symmetrized(&(s * williamson * s.transpose()))
}

pub fn random_oscillator<R: Rng>(rng: &mut R) -> OscillatorSpec {
    OscillatorSpec::new(rng.random_range(0.5..2.0), rng.random_range(0.5..2.0)).unwrap()
}

/// Random environment, shifted along the diagonal until the Hermitian
/// coefficient matrix is positive semidefinite with a small margin.
pub fn random_valid_environment<R: Rng>(rng: &mut R) -> EnvironmentSpec {
    let mut env = EnvironmentSpec {
        lambda: rng.random_range(0.05..1.5),
        ..Default::default()
    };
    for name in &EnvironmentSpec::FIELDS[1..] {
        *env.field_mut(name).unwrap() = rng.random_range(-0.5..0.5);
    }
    shift_to_valid(env, rng.random_range(0.0..0.3))
}

/// Random symmetric environment, made valid the same way.
pub fn random_valid_symmetric_environment<R: Rng>(rng: &mut R) -> EnvironmentSpec {
    let lambda = rng.random_range(0.05..1.5);
    let env = gaussdyn_core::symmetric_environment(
        lambda,
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
    );
    shift_to_valid(env, rng.random_range(0.0..0.3))
}

fn shift_to_valid(mut env: EnvironmentSpec, margin: f64) -> EnvironmentSpec {
    let report = validate_environment(&env, 0.0).unwrap();
    let shift = (-report.min_eigenvalue).max(0.0) + margin + 1e-6;
    env.d_xx += shift;
    env.d_pxpx += shift;
    env.d_yy += shift;
    env.d_pypy += shift;
    env
}

/// Gibbs-type environment with `det C(inf) <= 0`, satisfying the six
/// minor constraints.
pub fn random_gibbs_environment<R: Rng>(
    rng: &mut R,
    osc: &OscillatorSpec,
    with_d_xy: bool,
) -> EnvironmentSpec {
    loop {
        let lambda = rng.random_range(0.05..1.5);
        let mw = osc.m * osc.omega;
        // unimodal condition m w d_xx / lambda >= 1/2
        let d_xx = lambda / (2.0 * mw) * rng.random_range(1.0..4.0);
        let d_xy = if with_d_xy {
            d_xx * rng.random_range(-0.9..0.9)
        } else {
            0.0
        };
        let d_xpy = rng.random_range(0.0..1.0) * d_xx * mw;
        let env = gibbs_environment(osc, lambda, d_xx, d_xy, d_xpy);
        let report = validate_environment(&env, 0.0).unwrap();
        let det_c = gaussdyn_core::asymptotic_det_c(osc, &env).unwrap();
        if report.is_ok_under(gaussdyn_core::Positivity::Minors) && det_c <= 0.0 {
            return env;
        }
    }
}
