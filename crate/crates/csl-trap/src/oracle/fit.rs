//! Least-squares estimation of the heating rate from an energy record.

use super::TrajectoryResult;
use crate::error::{Error, Result};

/// Ordinary-least-squares line through the ensemble-mean energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatingFit {
    /// dE/dt, W.
    pub slope: f64,
    /// Standard error of the slope from the residual scatter, W.
    pub slope_stderr: f64,
    /// Fitted energy at t = 0, J.
    pub intercept: f64,
}

/// Fit E(t) = intercept + slope·t to (sample_times, ensemble_mean_energy).
///
/// Requires at least 10 samples and a time grid with spread; the standard
/// error comes from the residual variance with n−2 degrees of freedom.
pub fn estimate_heating_slope(result: &TrajectoryResult) -> Result<HeatingFit> {
    let t = &result.sample_times;
    let e = &result.ensemble_mean_energy;
    if t.len() != e.len() {
        return Err(Error::domain(format!(
            "sample grid and energy record differ in length: {} vs {}",
            t.len(),
            e.len()
        )));
    }
    let n = t.len();
    if n < 10 {
        return Err(Error::domain(format!("slope fit needs at least 10 samples, got {n}")));
    }
    let nf = n as f64;
    let t_mean = t.iter().sum::<f64>() / nf;
    let e_mean = e.iter().sum::<f64>() / nf;
    let mut s_tt = 0.0;
    let mut s_te = 0.0;
    for (&ti, &ei) in t.iter().zip(e) {
        let dt = ti - t_mean;
        s_tt += dt * dt;
        s_te += dt * (ei - e_mean);
    }
    if s_tt == 0.0 {
        return Err(Error::Degenerate("time grid has no spread; slope is undefined".into()));
    }
    let slope = s_te / s_tt;
    let intercept = e_mean - slope * t_mean;
    let ss_res: f64 = t
        .iter()
        .zip(e)
        .map(|(&ti, &ei)| {
            let r = ei - intercept - slope * ti;
            r * r
        })
        .sum();
    let slope_stderr = (ss_res / (nf - 2.0) / s_tt).sqrt();
    Ok(HeatingFit { slope, slope_stderr, intercept })
}
