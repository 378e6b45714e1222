//! Generic matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant. Used to cross-check the closed-form propagator.

use nalgebra::Matrix4;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled degree-13 approximant is accurate
/// to double precision.
const THETA13: f64 = 5.371_920_351_148_152;

fn one_norm(a: &Matrix4<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(a)`. Returns `None` only if the Padé denominator is singular, which
/// cannot happen for finite input after scaling.
pub fn expm(a: &Matrix4<f64>) -> Option<Matrix4<f64>> {
    let norm = one_norm(a);
    if !norm.is_finite() {
        return None;
    }
    let squarings = if norm > THETA13 {
        libm::ceil(libm::log2(norm / THETA13)) as i32
    } else {
        0
    };
    let a = a * libm::exp2(-f64::from(squarings));

    let b = &PADE13;
    let id = Matrix4::<f64>::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let u_inner =
        a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1];
    let u = a * u_inner;
    let v =
        a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];

    let mut r = (v - u).lu().solve(&(v + u))?;
    for _ in 0..squarings {
        r = r * r;
    }
    Some(r)
}
