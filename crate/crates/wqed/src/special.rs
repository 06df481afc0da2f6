//! Special-function kernels: the principal-branch complex exponential
//! integral `E1`, the tail-form sine/cosine integrals `si`/`ci`, and the
//! complex error function.
//!
//! Conventions:
//! - `E1(z) = ∫_1^∞ e^{-zt}/t dt`, principal branch, cut on the closed
//!   negative real axis.
//! - `si(a) = -∫_a^∞ sin u / u du = Si(a) - π/2` (entire in `a`).
//! - `ci(a) = -∫_a^∞ cos u / u du = Ci(a)`, defined for `a > 0` only;
//!   callers handle negative arguments by the even/odd reflection rules.
//!
//! All routines are pure functions of their arguments and thread-safe.

use crate::{Complex64, Error, Result, EULER_GAMMA};
use std::f64::consts::{FRAC_2_SQRT_PI, FRAC_PI_2, PI};

/// Series/continued-fraction crossover radius for `E1`.
///
/// Both representations converge to ~1e-13 relative at this radius; the
/// crossover-continuity unit test pins that.
const E1_SERIES_RADIUS: f64 = 4.0;

const MAX_ITER: usize = 100_000;
const TINY: f64 = 1e-300;

fn on_negative_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

/// Power series `E1(z) = -γ - ln z - Σ_{n≥1} (-z)^n / (n·n!)`, for |z| ≲ 4.
fn e1_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0); // (-z)^n / n!
    for n in 1..=MAX_ITER {
        term *= -z / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.norm() < 1e-18 * sum.norm().max(TINY) {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn guard(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        Complex64::new(TINY, 0.0)
    } else {
        z
    }
}

/// Modified-Lentz evaluation of the continued fraction for `e^z E1(z)`,
/// for |z| ≳ 4 off the negative real axis.
fn e1_cf_scaled(z: Complex64) -> Complex64 {
    // e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- 9/(z+7- ...))))
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / guard(b);
    let mut h = d;
    for i in 1..=MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / guard(a * d + b);
        c = guard(b + a / c);
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h
}

/// Principal-branch complex exponential integral `E1(z)`.
///
/// Accurate to ≤ 1e-12 relative for |z| in [1e-6, 1e4] off the cut.
pub fn exp_integral_e1(z: Complex64) -> Result<Complex64> {
    if on_negative_axis(z) {
        return Err(Error::Domain(format!(
            "E1 undefined on the closed negative real axis (z = {z})"
        )));
    }
    if z.norm() < E1_SERIES_RADIUS {
        Ok(e1_series(z))
    } else {
        Ok((-z).exp() * e1_cf_scaled(z))
    }
}

/// Scaled exponential integral `e^z E1(z)`.
///
/// This is the combination the field kernels need; it stays O(1/|z|) even
/// where `E1(z)` alone would overflow or underflow (Re z large of either
/// sign).
pub fn exp_integral_e1_scaled(z: Complex64) -> Result<Complex64> {
    if on_negative_axis(z) {
        return Err(Error::Domain(format!(
            "E1 undefined on the closed negative real axis (z = {z})"
        )));
    }
    if z.norm() < E1_SERIES_RADIUS {
        Ok(z.exp() * e1_series(z))
    } else {
        Ok(e1_cf_scaled(z))
    }
}

/// `E1(i·a)` for a > 0, giving `-Ci(a) + i·si(a)` in one evaluation.
fn e1_imag_axis(a: f64) -> Complex64 {
    let z = Complex64::new(0.0, a);
    if a < E1_SERIES_RADIUS {
        e1_series(z)
    } else {
        // e^{-ia} (e^{ia} E1(ia)); the prefactor is a pure phase
        Complex64::from_polar(1.0, -a) * e1_cf_scaled(z)
    }
}

/// Tail-form sine integral `si(a) = Si(a) - π/2`, entire in `a`.
///
/// Satisfies `si(a) + si(-a) = -π` and `si(a) → 0` as `a → +∞`;
/// absolute accuracy ≤ 1e-12.
pub fn si(a: f64) -> f64 {
    if a == 0.0 {
        return -FRAC_PI_2;
    }
    if a < 0.0 {
        return -PI - si(-a);
    }
    e1_imag_axis(a).im
}

/// Cosine integral `ci(a) = Ci(a)` for `a > 0`.
///
/// Logarithmically divergent at 0; negative arguments are a caller-side
/// reflection (`ci(|a|)`), not handled silently here.
pub fn ci(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!(
            "ci requires a > 0 (got {a}); apply |a| per the reflection rule first"
        )));
    }
    Ok(-e1_imag_axis(a).re)
}

// ---------------------------------------------------------------------------
// complex error function
// ---------------------------------------------------------------------------

/// Imaginary-part window inside which `erf` is supported.
const ERF_IM_WINDOW: f64 = 30.0;
/// Representability guard: |erf(x+iy)| ~ e^{y²-x²}, which must fit in f64.
const ERF_EXP_LIMIT: f64 = 700.0;

/// Maclaurin series for |z| ≲ 3.5 (no destructive cancellation there).
fn erf_series(z: Complex64) -> Complex64 {
    let zz = z * z;
    let mut term = z; // z^{2n+1} (-1)^n / n!
    let mut sum = z;
    for n in 1..=MAX_ITER {
        term *= -zz / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.norm() < 1e-18 * sum.norm().max(TINY) {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// `erfc(x)·√π·e^{x²}` for real x ≳ 3 via the Laplace continued fraction.
fn erfc_cf_scaled(x: f64) -> f64 {
    // 1/(x+ (1/2)/(x+ 1/(x+ (3/2)/(x+ 2/(x+ ...)))))
    let b = x;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let a = 0.5 * i as f64;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// Real error function (series below 3.5, continued fraction above).
pub fn erf_real(x: f64) -> f64 {
    if x < 0.0 {
        return -erf_real(-x);
    }
    if x <= 3.5 {
        erf_series(Complex64::new(x, 0.0)).re
    } else {
        1.0 - (-x * x).exp() * erfc_cf_scaled(x) / PI.sqrt()
    }
}

/// Trapezoid-sum evaluation of `erf(x+iy)` for x ≥ 0, arbitrary y
/// (Abramowitz–Stegun 7.1.29 с h = 1/2); aliasing error ~1.6e-16.
fn erf_as_sum(x: f64, y: f64) -> Complex64 {
    let ya = y.abs();
    let sy = if y < 0.0 { -1.0 } else { 1.0 };
    let lead = Complex64::new(erf_real(x), 0.0);
    // e^{-x²}/(2πx) · [(1-cos 2xy) + i sin 2xy], in forms finite as x→0
    let emx2 = (-x * x).exp();
    let two_xy = 2.0 * x * ya;
    let s = (x * ya).sin();
    let re2 = if x == 0.0 {
        0.0
    } else {
        emx2 * 2.0 * s * s / (2.0 * PI * x)
    };
    let im2 = if two_xy.abs() < 1e-8 {
        emx2 * ya / PI * (1.0 - two_xy * two_xy / 6.0)
    } else {
        emx2 * two_xy.sin() / (2.0 * PI * x)
    };
    // Σ_k e^{-k²/4}/(k²+4x²) · [f_k + i g_k], with the exponentials of the
    // cosh/sinh factors combined before exponentiation to avoid overflow
    let kmax = (2.0 * ya).ceil() as usize + 16;
    let (c2xy, s2xy) = ((two_xy).cos(), (two_xy).sin());
    let mut sre = 0.0;
    let mut sim = 0.0;
    for k in 1..=kmax {
        let kf = k as f64;
        let base = -x * x - 0.25 * kf * kf;
        let ep = (base + kf * ya).exp();
        let em = (base - kf * ya).exp();
        let cosh_t = 0.5 * (ep + em); // e^{-x²-k²/4} cosh(k|y|)
        let sinh_t = 0.5 * (ep - em);
        let f_k = 2.0 * x * base.exp() - 2.0 * x * cosh_t * c2xy + kf * sinh_t * s2xy;
        let g_k = 2.0 * x * cosh_t * s2xy + kf * sinh_t * c2xy;
        let w = 1.0 / (kf * kf + 4.0 * x * x);
        sre += w * f_k;
        sim += w * g_k;
    }
    let sum = Complex64::new(sre, sim) * (2.0 / PI);
    let v = lead + Complex64::new(re2, im2) + sum;
    Complex64::new(v.re, sy * v.im)
}

/// Complex error function within the declared stability window
/// `|Im z| ≤ 30` (and `Im² - Re² ≤ 700` so the value fits in f64).
///
/// Relative accuracy ≤ 1e-10 inside the window.
pub fn erf(z: Complex64) -> Result<Complex64> {
    if z.im.abs() > ERF_IM_WINDOW {
        return Err(Error::Domain(format!(
            "erf argument outside stability window |Im z| <= {ERF_IM_WINDOW} (z = {z})"
        )));
    }
    if z.im * z.im - z.re * z.re > ERF_EXP_LIMIT {
        return Err(Error::Domain(format!(
            "erf({z}) magnitude exceeds the f64 range"
        )));
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(erf_real(z.re), 0.0));
    }
    if z.re < 0.0 {
        return Ok(-erf(-z)?);
    }
    if z.norm() <= 3.5 {
        Ok(erf_series(z))
    } else {
        Ok(erf_as_sum(z.re, z.im))
    }
}
