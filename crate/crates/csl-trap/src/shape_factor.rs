//! Geometry factor χ(x) of the collapse heating rate, x ≡ L/r_c.
//!
//! For a sphere of radius L:
//!
//! ```text
//! χ(x) = 2π I(x)/x,   I(x) = 1 − 2x⁻² + (1 + 2x⁻²) e^{−x²}
//! ```
//!
//! and for a cube of side 2L:
//!
//! ```text
//! χ(x) = I₁₂(x) I₃(x)/x³,  I₃ = 2[1 − e^{−x²}],  I₁₂ = [e^{−x²} − 1 + √π·x·Erf(x)]²
//! ```
//!
//! Both vanish in the x → 0 and x → ∞ limits and have a single interior maximum
//! (sphere: χ ≈ 1.7202 at x ≈ 2.38; cube: χ ≈ 1.5943 at x ≈ 1.92), so the heating
//! rate is largest when the body size matches the collapse correlation length.
//!
//! # Numerical notes
//!
//! The sphere form subtracts near-equal terms of size 2x⁻², losing all precision
//! by x ~ 10⁻³ (terms of size 10⁶ cancelling to 10⁻¹³). Below [`SPHERE_SERIES_LIMIT`]
//! the implementation switches to the exact alternating series
//!
//! ```text
//! I(x) = Σ_{n≥2} (−1)ⁿ x^{2n} (n−1)/(n+1)!  =  x⁴/6 − x⁶/12 + x⁸/40 − ⋯
//! ```
//!
//! whose terms shrink by ≥ x² per order, giving full f64 accuracy; the branches
//! agree to ~10⁻¹² relative at the switchover. The cube bracket has no
//! leading-order cancellation once `exp_m1` is used, so its series fallback
//! (below [`CUBE_SERIES_LIMIT`]) only guards the extreme small-x tail.

use crate::error::{Error, Result};
use crate::search::golden_max;
use crate::special::erf;

/// Sphere: x below which I(x) is evaluated by its power series.
pub const SPHERE_SERIES_LIMIT: f64 = 0.5;

/// Cube: x below which the bracket of I₁₂ is evaluated by its power series.
pub const CUBE_SERIES_LIMIT: f64 = 1e-3;

/// Default search bracket for the χ maximum.
const ARGMAX_BRACKET: (f64, f64) = (1e-2, 1e2);
/// Absolute x-tolerance of the extremum search.
const ARGMAX_XTOL: f64 = 1e-4;

/// Shape kind, for operations that depend on geometry but not on scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Sphere,
    Cube,
}

impl From<&crate::body::Shape> for ShapeKind {
    fn from(shape: &crate::body::Shape) -> Self {
        match shape {
            crate::body::Shape::Sphere { .. } => ShapeKind::Sphere,
            crate::body::Shape::Cube { .. } => ShapeKind::Cube,
        }
    }
}

/// A χ evaluation with its geometry-dependent intermediate(s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFactorEvaluation {
    pub x: f64,
    pub chi: f64,
    pub parts: ShapeFactorParts,
}

/// Intermediate quantities of a χ evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeFactorParts {
    Sphere { i: f64 },
    Cube { i12: f64, i3: f64 },
}

fn check_x(x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::Domain(format!("shape-factor argument x must be positive and finite, got {x}")))
    }
}

/// Sphere intermediate I(x), series branch: Σ_{n≥2} (−1)ⁿ u^n (n−1)/(n+1)!, u = x².
fn sphere_i_series(u: f64) -> f64 {
    let mut term = u * u / 6.0; // n = 2
    let mut sum = term;
    for n in 2..40u32 {
        // term_{n+1}/term_n = −u·n / ((n−1)(n+2))
        term *= -u * n as f64 / ((n - 1) as f64 * (n + 2) as f64);
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum
}

/// Sphere intermediate I(x), closed form rearranged as
/// I = [u(1 + e^{−u}) + 2(e^{−u} − 1)]/u to keep the residual cancellation mild.
fn sphere_i_direct(u: f64) -> f64 {
    let e = (-u).exp();
    (u * (1.0 + e) + 2.0 * f64::exp_m1(-u)) / u
}

/// Geometry factor of a sphere, χ = 2πI/x.
pub fn chi_sphere(x: f64) -> Result<f64> {
    Ok(evaluate_sphere(check_x(x)?).chi)
}

fn evaluate_sphere(x: f64) -> ShapeFactorEvaluation {
    let u = x * x;
    let i = if x < SPHERE_SERIES_LIMIT { sphere_i_series(u) } else { sphere_i_direct(u) };
    ShapeFactorEvaluation {
        x,
        chi: 2.0 * std::f64::consts::PI * i / x,
        parts: ShapeFactorParts::Sphere { i },
    }
}

/// Cube bracket e^{−x²} − 1 + √π·x·Erf(x), series branch:
/// Σ_{n≥1} (−1)ⁿ uⁿ [1/n! − 2/((n−1)!(2n−1))] = u − u²/6 + u³/30 − u⁴/168 ⋯
fn cube_bracket_series(u: f64) -> f64 {
    u - u * u / 6.0 + u * u * u / 30.0 - u * u * u * u / 168.0
}

/// Geometry factor of a cube (side 2L), χ = I₁₂·I₃/x³.
pub fn chi_cube(x: f64) -> Result<f64> {
    Ok(evaluate_cube(check_x(x)?).chi)
}

fn evaluate_cube(x: f64) -> ShapeFactorEvaluation {
    let u = x * x;
    // e^{−u} − 1 + √π·x·erf(x): both pieces are O(u) as u → 0, so exp_m1 keeps the
    // direct form well-conditioned down to the series switchover.
    let bracket = if x < CUBE_SERIES_LIMIT {
        cube_bracket_series(u)
    } else {
        f64::exp_m1(-u) + std::f64::consts::PI.sqrt() * x * erf(x)
    };
    let i12 = bracket * bracket;
    let i3 = -2.0 * f64::exp_m1(-u);
    ShapeFactorEvaluation { x, chi: i12 * i3 / (x * x * x), parts: ShapeFactorParts::Cube { i12, i3 } }
}

/// Geometry factor for either shape kind.
pub fn chi(kind: ShapeKind, x: f64) -> Result<f64> {
    match kind {
        ShapeKind::Sphere => chi_sphere(x),
        ShapeKind::Cube => chi_cube(x),
    }
}

/// Full evaluation (χ plus intermediates) for either shape kind.
pub fn evaluate(kind: ShapeKind, x: f64) -> Result<ShapeFactorEvaluation> {
    let x = check_x(x)?;
    Ok(match kind {
        ShapeKind::Sphere => evaluate_sphere(x),
        ShapeKind::Cube => evaluate_cube(x),
    })
}

/// Location and value of the χ maximum, searched on x ∈ [10⁻², 10²] to an
/// absolute x-tolerance of 10⁻⁴ by golden section (χ is unimodal there).
pub fn chi_argmax(kind: ShapeKind) -> (f64, f64) {
    chi_argmax_bracketed(kind, ARGMAX_BRACKET.0, ARGMAX_BRACKET.1)
        .expect("default bracket is valid")
}

/// As [`chi_argmax`], on a caller-supplied bracket.
pub fn chi_argmax_bracketed(kind: ShapeKind, lo: f64, hi: f64) -> Result<(f64, f64)> {
    check_x(lo)?;
    check_x(hi)?;
    if lo >= hi {
        return Err(Error::Domain(format!("empty search bracket [{lo}, {hi}]")));
    }
    let f = move |x: f64| chi(kind, x).expect("bracket is positive");
    Ok(golden_max(f, lo, hi, ARGMAX_XTOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // High-precision reference values (40-digit arithmetic on the defining
    // expressions, frozen here).
    const SPHERE_X_STAR: f64 = 2.378_355_808;
    const SPHERE_CHI_STAR: f64 = 1.720_244_779_81;
    const CUBE_X_STAR: f64 = 1.920_067_246_06;
    const CUBE_CHI_STAR: f64 = 1.594_278_269_54;
    const CHI_SPHERE_0P1: f64 = 1.041_977_236_56e-3;
    const CHI_CUBE_0P1: f64 = 1.983_418_555_05e-3;
    const CHI_SPHERE_100: f64 = 6.281_928_670_12e-2;
    const CHI_CUBE_100: f64 = 6.212_487_153_14e-2;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn sphere_peak() {
        let (x, chi) = chi_argmax(ShapeKind::Sphere);
        assert!((x - 2.38).abs() <= 0.01, "x* = {x}");
        assert!((chi - 1.7202).abs() <= 5e-4, "chi* = {chi}");
        assert!((x - SPHERE_X_STAR).abs() < 1e-4);
        assert!(rel(chi, SPHERE_CHI_STAR) < 1e-9);
    }

    #[test]
    fn cube_peak() {
        let (x, chi) = chi_argmax(ShapeKind::Cube);
        assert!((x - 1.92).abs() <= 0.01, "x* = {x}");
        assert!((chi - 1.5943).abs() <= 5e-4, "chi* = {chi}");
        assert!((x - CUBE_X_STAR).abs() < 1e-4);
        assert!(rel(chi, CUBE_CHI_STAR) < 1e-9);
    }

    #[test]
    fn narrow_bracket_reproduces_sphere_peak() {
        let (x, chi) = chi_argmax_bracketed(ShapeKind::Sphere, 2.0, 3.0).unwrap();
        assert!((x - SPHERE_X_STAR).abs() < 2e-4);
        assert!(rel(chi, SPHERE_CHI_STAR) < 1e-9);
    }

    #[test]
    fn small_x_limits() {
        // Sphere: χ → πx³/3 (within 1% at x = 0.1); cube: χ → 2x³ (within 2%).
        let x = 0.1;
        let got = chi_sphere(x).unwrap();
        assert!(rel(got, std::f64::consts::PI * x * x * x / 3.0) < 0.01);
        assert!(rel(got, CHI_SPHERE_0P1) < 1e-10);
        let got = chi_cube(x).unwrap();
        assert!(rel(got, 2.0 * x * x * x) < 0.02);
        assert!(rel(got, CHI_CUBE_0P1) < 1e-10);
    }

    #[test]
    fn large_x_limits() {
        // Sphere: I → 1, χ → 2π/x within 0.1% at x = 100.
        let two_pi_over_x = 2.0 * std::f64::consts::PI / 100.0;
        let got = chi_sphere(100.0).unwrap();
        assert!(rel(got, two_pi_over_x) < 1e-3);
        assert!(rel(got, CHI_SPHERE_100) < 1e-12);
        // Cube: the asymptote is approached as 2π/x·(1 − 2/(√π x) + …), i.e. the
        // ratio at x = 100 is 1 − 1.13%; assert the exact value and the band.
        let got = chi_cube(100.0).unwrap();
        assert!(rel(got, two_pi_over_x) < 0.015);
        assert!(rel(got, two_pi_over_x) > 0.005);
        assert!(rel(got, CHI_CUBE_100) < 1e-12);
    }

    #[test]
    fn series_and_direct_branches_agree_at_switchover() {
        let u = SPHERE_SERIES_LIMIT * SPHERE_SERIES_LIMIT;
        let series = sphere_i_series(u);
        let direct = sphere_i_direct(u);
        assert!(
            rel(series, direct) < 1e-9,
            "sphere branches differ by {} at x = {SPHERE_SERIES_LIMIT}",
            rel(series, direct)
        );

        let x = CUBE_SERIES_LIMIT;
        let u = x * x;
        let series = cube_bracket_series(u);
        let direct = f64::exp_m1(-u) + std::f64::consts::PI.sqrt() * x * erf(x);
        assert!(
            rel(series, direct) < 1e-9,
            "cube branches differ by {} at x = {CUBE_SERIES_LIMIT}",
            rel(series, direct)
        );
    }

    #[test]
    fn sphere_series_matches_small_x_asymptote() {
        // I(x) = x⁴/6·(1 − x²/2 + …); at x = 1e-3 the correction is 5e-7.
        let x = 1e-3;
        let i = sphere_i_series(x * x);
        assert!(rel(i, x.powi(4) / 6.0) < 1e-6);
        // χ(1e-3), frozen from 40-digit evaluation.
        assert!(rel(chi_sphere(x).unwrap(), 1.047_197_027_6e-9) < 1e-9);
    }

    #[test]
    fn unimodal_and_vanishing_at_both_ends() {
        // Exactly one rise→fall transition of discrete differences on a
        // 10⁴-point log grid over [10⁻², 10²].
        for kind in [ShapeKind::Sphere, ShapeKind::Cube] {
            let n = 10_000;
            let (lo, hi) = (1e-2f64, 1e2f64);
            let mut prev = chi(kind, lo).unwrap();
            let mut falling = false;
            for i in 1..n {
                let x = lo * (hi / lo).powf(i as f64 / (n - 1) as f64);
                let v = chi(kind, x).unwrap();
                assert!(v >= 0.0 && v.is_finite());
                if falling {
                    assert!(v <= prev, "{kind:?} rises again near x = {x}");
                } else if v < prev {
                    falling = true;
                }
                prev = v;
            }
            assert!(falling, "{kind:?} never peaked on the grid");
            assert!(chi(kind, 1e-6).unwrap() < 1e-8);
            assert!(chi(kind, 1e6).unwrap() < 1e-4);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(chi_sphere(0.0).is_err());
        assert!(chi_sphere(-1.0).is_err());
        assert!(chi_sphere(f64::NAN).is_err());
        assert!(chi_cube(f64::INFINITY).is_err());
        assert!(chi_argmax_bracketed(ShapeKind::Sphere, 3.0, 2.0).is_err());
    }

    #[test]
    fn evaluation_exposes_intermediates() {
        let ev = evaluate(ShapeKind::Cube, 1.0).unwrap();
        match ev.parts {
            ShapeFactorParts::Cube { i12, i3 } => {
                assert!(rel(i12 * i3 / 1.0, ev.chi) < 1e-15);
            }
            _ => panic!("wrong parts"),
        }
    }

    proptest! {
        #[test]
        fn chi_non_negative_and_finite(x in 1e-6f64..1e4) {
            let s = chi_sphere(x).unwrap();
            let c = chi_cube(x).unwrap();
            prop_assert!(s.is_finite() && s >= 0.0);
            prop_assert!(c.is_finite() && c >= 0.0);
        }

        #[test]
        fn sphere_branches_consistent_near_switchover(x in 0.4f64..0.6) {
            let u = x * x;
            prop_assert!(rel(sphere_i_series(u), sphere_i_direct(u)) < 1e-9);
        }
    }
}
