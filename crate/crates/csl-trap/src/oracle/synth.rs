//! Stationary noise synthesis from a target one-sided power spectral density.
//!
//! White noise is exact: i.i.d. zero-mean Gaussians of variance S_F/(2·dt)
//! reproduce a flat one-sided density S_F up to the Nyquist frequency. Colored
//! spectra use a harmonic comb,
//!
//! ```text
//! X(t) = Σ_k √(2·S(f_k)·Δf) · cos(2π f_k t + φ_k),   Δf = 1/duration,
//! ```
//!
//! with independent uniform phases — an analytically auditable construction
//! whose periodogram sits exactly on the target at every comb line. The comb
//! spans [f_c/10, min(10·f_c, f_Nyquist)] around a stated center frequency f_c
//! (heating samples the PSD locally at the trap frequency, so one decade each
//! way suffices). Comb lines are advanced by complex rotation per step rather
//! than per-sample trigonometry.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Target one-sided PSD of a synthesized noise force (or position).
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseSpec {
    /// Flat density `s_f` (N²/Hz).
    WhiteForce { s_f: f64 },
    /// S(ω) = c/ω, i.e. S(f) = c/(2πf); `c` in N²·(rad/s)/Hz.
    OneOverF { c: f64 },
    /// Piecewise-linear density over strictly increasing frequencies (Hz);
    /// zero outside the tabulated range.
    TabulatedPsd { points: Vec<(f64, f64)> },
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            NoiseSpec::WhiteForce { s_f } => {
                if !(s_f.is_finite() && *s_f >= 0.0) {
                    return Err(Error::domain(format!("white PSD must be ≥ 0, got {s_f}")));
                }
            }
            NoiseSpec::OneOverF { c } => {
                if !(c.is_finite() && *c >= 0.0) {
                    return Err(Error::domain(format!("1/f coefficient must be ≥ 0, got {c}")));
                }
            }
            NoiseSpec::TabulatedPsd { points } => {
                if points.is_empty() {
                    return Err(Error::domain("tabulated PSD must not be empty"));
                }
                for &(f, s) in points {
                    if !(f.is_finite() && f > 0.0) {
                        return Err(Error::domain(format!(
                            "tabulated PSD frequencies must be positive, got {f}"
                        )));
                    }
                    if !(s.is_finite() && s >= 0.0) {
                        return Err(Error::domain(format!(
                            "tabulated PSD values must be ≥ 0, got {s}"
                        )));
                    }
                }
                if points.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::domain(
                        "tabulated PSD frequencies must be strictly increasing",
                    ));
                }
            }
        }
        Ok(())
    }

    /// Density at frequency `f` (Hz), per Hz.
    pub fn psd_at_f(&self, f: f64) -> Result<f64> {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::domain(format!("PSD frequency must be positive, got {f}")));
        }
        Ok(match self {
            NoiseSpec::WhiteForce { s_f } => *s_f,
            NoiseSpec::OneOverF { c } => c / (std::f64::consts::TAU * f),
            NoiseSpec::TabulatedPsd { points } => {
                let first = points[0];
                let last = points[points.len() - 1];
                if f < first.0 || f > last.0 {
                    0.0
                } else {
                    match points.binary_search_by(|p| p.0.total_cmp(&f)) {
                        Ok(i) => points[i].1,
                        Err(i) => {
                            let (f0, s0) = points[i - 1];
                            let (f1, s1) = points[i];
                            s0 + (s1 - s0) * (f - f0) / (f1 - f0)
                        }
                    }
                }
            }
        })
    }

    /// Density at angular frequency `omega` (rad/s), still per Hz.
    pub fn psd_at(&self, omega: f64) -> Result<f64> {
        self.psd_at_f(omega / std::f64::consts::TAU)
    }
}

/// Synthesize one realization of the noise as a per-step series of length
/// `round(duration/dt)`; sample i is the value held over step i.
///
/// `center_f` (Hz) locates the synthesis band of the colored kinds; white
/// noise ignores it. Deterministic for a given RNG state.
pub fn synthesize_noise(
    spec: &NoiseSpec,
    duration: f64,
    dt: f64,
    center_f: f64,
    rng: &mut impl Rng,
) -> Result<Vec<f64>> {
    spec.validate()?;
    if !(duration.is_finite() && duration > 0.0) {
        return Err(Error::domain(format!("duration must be positive, got {duration}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::domain(format!("time step must be positive, got {dt}")));
    }
    let n = (duration / dt).round() as usize;
    if n == 0 {
        return Err(Error::domain("duration shorter than one time step"));
    }

    if let NoiseSpec::WhiteForce { s_f } = spec {
        if *s_f == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let sigma = (s_f / (2.0 * dt)).sqrt();
        let normal = Normal::new(0.0, sigma).expect("positive finite standard deviation");
        return Ok((0..n).map(|_| normal.sample(rng)).collect());
    }

    // Colored: harmonic comb on the grid f_k = k·Δf.
    if !(center_f.is_finite() && center_f > 0.0) {
        return Err(Error::domain(format!(
            "colored-noise synthesis needs a positive center frequency, got {center_f}"
        )));
    }
    let df = 1.0 / duration;
    let f_lo = center_f / 10.0;
    let f_hi = (10.0 * center_f).min(1.0 / (2.0 * dt));
    let k_min = ((f_lo / df).ceil() as usize).max(1);
    let k_max = (f_hi / df).floor() as usize;
    if k_max < k_min {
        return Err(Error::Config(format!(
            "synthesis band [{f_lo}, {f_hi}] Hz holds no comb line at spacing {df} Hz; \
             lengthen the duration or refine the step"
        )));
    }

    let n_comp = k_max - k_min + 1;
    let mut amp = Vec::with_capacity(n_comp);
    let mut cos_t = Vec::with_capacity(n_comp);
    let mut sin_t = Vec::with_capacity(n_comp);
    let mut rot_c = Vec::with_capacity(n_comp);
    let mut rot_s = Vec::with_capacity(n_comp);
    for k in k_min..=k_max {
        let f_k = k as f64 * df;
        amp.push((2.0 * spec.psd_at_f(f_k)? * df).sqrt());
        let phase = rng.random::<f64>() * std::f64::consts::TAU;
        cos_t.push(phase.cos());
        sin_t.push(phase.sin());
        let theta = std::f64::consts::TAU * f_k * dt;
        rot_c.push(theta.cos());
        rot_s.push(theta.sin());
    }

    let mut series = Vec::with_capacity(n);
    for _ in 0..n {
        let mut x = 0.0;
        for k in 0..n_comp {
            x += amp[k] * cos_t[k];
            let c_next = cos_t[k] * rot_c[k] - sin_t[k] * rot_s[k];
            sin_t[k] = sin_t[k] * rot_c[k] + cos_t[k] * rot_s[k];
            cos_t[k] = c_next;
        }
        series.push(x);
    }
    Ok(series)
}

/// One-sided periodogram of a series: (f_j, Ŝ(f_j)) for j = 1 .. ⌈n/2⌉−1, with
/// Ŝ = (2·dt/n)·|Σ x_i e^(−i 2π j i/n)|². O(n²) by design — a slow, obviously
/// correct estimator used to audit the synthesizer, not a production transform.
pub fn periodogram(series: &[f64], dt: f64) -> Result<Vec<(f64, f64)>> {
    if series.len() < 2 {
        return Err(Error::domain("periodogram needs at least 2 samples"));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::domain(format!("time step must be positive, got {dt}")));
    }
    let n = series.len();
    let mut out = Vec::with_capacity(n.div_ceil(2).saturating_sub(1));
    for j in 1..n.div_ceil(2) {
        let theta = -std::f64::consts::TAU * j as f64 / n as f64;
        let (step_c, step_s) = (theta.cos(), theta.sin());
        let (mut c, mut s) = (1.0, 0.0);
        let (mut re, mut im) = (0.0, 0.0);
        for &x in series {
            re += x * c;
            im += x * s;
            let c_next = c * step_c - s * step_s;
            s = s * step_c + c * step_s;
            c = c_next;
        }
        let f = j as f64 / (n as f64 * dt);
        out.push((f, 2.0 * dt / n as f64 * (re * re + im * im)));
    }
    Ok(out)
}
