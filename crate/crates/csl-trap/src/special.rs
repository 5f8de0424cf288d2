//! Error function, evaluated in-crate so results are bit-stable across platforms.
//!
//! `erf(x) = 2π^{-1/2} ∫₀ˣ e^{-t²} dt` enters the cube geometry factor. Platform
//! `libm` implementations differ in the last bits, which would make golden outputs
//! machine-dependent, so the crate carries its own evaluation:
//!
//! * `|x| < 3`: the non-alternating confluent series
//!   `erf(x) = (2/√π)·x·e^{-x²}·Σₙ (2x²)ⁿ / (1·3·5⋯(2n+1))`
//!   (all terms positive — no cancellation, unlike the Maclaurin series);
//! * `|x| ≥ 3`: the classical continued fraction for `√π·e^{x²}·erfc(x)` with
//!   partial numerators n/2, evaluated by the modified Lentz algorithm.
//!
//! Both branches converge to full f64 precision in well under 100 terms; the
//! observed error against an independent quadrature reference is below 1e-14
//! absolute on [0, 6] (documented bound: 1e-10).

use std::f64::consts::FRAC_2_SQRT_PI;

/// Series/continued-fraction crossover point.
const SERIES_LIMIT: f64 = 3.0;

/// Error function, accurate to better than 1e-10 absolute everywhere (observed
/// ≤ 1e-14 on [0, 6]); odd in `x`; `erf(±∞) = ±1`; NaN propagates.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let value = if ax < SERIES_LIMIT { erf_series(ax) } else { 1.0 - erfc_cf(ax) };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// Non-alternating series, valid for small-to-moderate non-negative x.
fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let u = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0u32;
    while term > sum * 1e-18 && n < 200 {
        n += 1;
        term *= u / (2 * n + 1) as f64;
        sum += term;
    }
    FRAC_2_SQRT_PI * (-x * x).exp() * sum
}

/// Complementary error function via the continued fraction
/// `√π·e^{x²}·erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))`,
/// for x ≥ SERIES_LIMIT (modified Lentz evaluation).
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..200 {
        let a = n as f64 / 2.0;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / (std::f64::consts::PI.sqrt() * f)
}
