//! Independent Monte-Carlo verification of the analytic heating formulas.
//!
//! The analytic chain says: force noise with one-sided PSD S_F heats a trapped
//! oscillator at Γ = S_F(ω₀)/(4m). This module checks that claim from the other
//! direction — synthesize an actual random force ([`synth`]), integrate the
//! actual equation of motion ([`integrate`]), fit the actual energy growth
//! ([`fit`]), and compare. Gas collisions get the same treatment with a kinetic
//! Monte Carlo ([`collide`]).
//!
//! Determinism contract: every trajectory draws from a counter-based RNG
//! seeded with the master seed and the trajectory index as the stream id, and
//! ensemble reduction always runs in trajectory-index order. Results are
//! therefore bit-identical for a fixed configuration regardless of how many
//! threads execute the sweep.

pub mod collide;
pub mod fit;
pub mod integrate;
pub mod synth;

pub use collide::{run_collision_ensemble, simulate_collision_kicks, CollisionReport};
pub use fit::{estimate_heating_slope, HeatingFit};
pub use integrate::{integrate_oscillator, OscillatorState};
pub use synth::{periodogram, synthesize_noise, NoiseSpec};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Ensemble-simulation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    /// Integrator step, s.
    pub dt: f64,
    /// Simulated time per trajectory, s.
    pub duration: f64,
    /// Number of independent trajectories.
    pub ensemble_size: usize,
    /// Master seed; trajectory i uses RNG stream i of this seed.
    pub master_seed: u64,
    /// Motional energy at t = 0 (placed in the velocity), J.
    pub initial_energy: f64,
}

impl Default for SimulationConfig {
    /// Sized for a 1 Hz oscillator: 100 steps per period, 100 periods,
    /// 200 trajectories.
    fn default() -> Self {
        SimulationConfig {
            dt: 0.01,
            duration: 100.0,
            ensemble_size: 200,
            master_seed: 1,
            initial_energy: 0.0,
        }
    }
}

impl SimulationConfig {
    /// Check the resolution invariants against the oscillator being simulated:
    /// at least 100 steps per period and at least 100 periods of data.
    pub fn validate_for(&self, omega0: f64) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("time step must be positive, got {}", self.dt)));
        }
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::Config(format!("omega0 must be positive, got {omega0}")));
        }
        let period = std::f64::consts::TAU / omega0;
        if self.duration < 100.0 * period {
            return Err(Error::Config(format!(
                "duration {} s is shorter than 100 oscillation periods ({} s)",
                self.duration,
                100.0 * period
            )));
        }
        if self.dt > period / 100.0 {
            return Err(Error::Config(format!(
                "time step {} s is coarser than 1/100 of the oscillation period ({} s)",
                self.dt,
                period / 100.0
            )));
        }
        if self.ensemble_size == 0 {
            return Err(Error::Config("ensemble size must be at least 1".into()));
        }
        if !(self.initial_energy >= 0.0 && self.initial_energy.is_finite()) {
            return Err(Error::Config(format!(
                "initial energy must be non-negative, got {}",
                self.initial_energy
            )));
        }
        Ok(())
    }

    /// Number of integrator steps covering `duration`.
    pub fn n_steps(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }
}

/// The RNG for one trajectory of an ensemble: a fixed, documented splitting
/// rule (master seed + trajectory index as the stream id), so any trajectory
/// can be regenerated in isolation.
pub fn trajectory_rng(master_seed: u64, trajectory_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trajectory_index);
    rng
}

/// Time series of an ensemble simulation: a shared sample-time grid, the
/// ensemble-mean energy at each sample, and each trajectory's final energy.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryResult {
    pub sample_times: Vec<f64>,
    pub ensemble_mean_energy: Vec<f64>,
    pub final_energies: Vec<f64>,
}

/// Mean across many single-trajectory results, reduced in index order with
/// compensated summation (reproducible to machine precision regardless of
/// how the trajectories themselves were scheduled).
fn merge_trajectories(singles: Vec<TrajectoryResult>) -> Result<TrajectoryResult> {
    let first = singles.first().ok_or_else(|| Error::domain("empty ensemble"))?;
    let n_samples = first.sample_times.len();
    let sample_times = first.sample_times.clone();
    let mut sum = vec![0.0f64; n_samples];
    let mut comp = vec![0.0f64; n_samples];
    let mut final_energies = Vec::with_capacity(singles.len());
    for single in &singles {
        if single.sample_times.len() != n_samples {
            return Err(Error::domain("trajectory sample grids differ within one ensemble"));
        }
        for (i, &e) in single.ensemble_mean_energy.iter().enumerate() {
            let y = e - comp[i];
            let t = sum[i] + y;
            comp[i] = (t - sum[i]) - y;
            sum[i] = t;
        }
        final_energies.extend_from_slice(&single.final_energies);
    }
    let n = singles.len() as f64;
    let ensemble_mean_energy = sum.into_iter().map(|s| s / n).collect();
    Ok(TrajectoryResult { sample_times, ensemble_mean_energy, final_energies })
}

/// Simulate an ensemble of noise-driven oscillator trajectories.
///
/// Each trajectory synthesizes its own force series (from its own RNG stream),
/// optionally scaled by `force_scale` (used to turn positional noise x_n(t)
/// into the equivalent force mω₀²·x_n), and is integrated symplectically.
fn run_scaled_ensemble(
    m: f64,
    omega0: f64,
    spec: &NoiseSpec,
    force_scale: f64,
    config: &SimulationConfig,
) -> Result<TrajectoryResult> {
    config.validate_for(omega0)?;
    spec.validate()?;
    let center_f = omega0 / std::f64::consts::TAU;
    let initial = OscillatorState::from_energy(m, config.initial_energy)?;
    let singles: Result<Vec<TrajectoryResult>> = (0..config.ensemble_size)
        .into_par_iter()
        .map(|index| {
            let mut rng = trajectory_rng(config.master_seed, index as u64);
            let mut forces =
                synthesize_noise(spec, config.duration, config.dt, center_f, &mut rng)?;
            if force_scale != 1.0 {
                for f in &mut forces {
                    *f *= force_scale;
                }
            }
            integrate_oscillator(m, omega0, &forces, config.dt, initial)
        })
        .collect();
    merge_trajectories(singles?)
}

/// Simulate an ensemble driven by force noise described by `spec`.
pub fn run_ensemble(
    m: f64,
    omega0: f64,
    spec: &NoiseSpec,
    config: &SimulationConfig,
) -> Result<TrajectoryResult> {
    run_scaled_ensemble(m, omega0, spec, 1.0, config)
}

/// Analytic-vs-simulated comparison of one heating channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    /// Closed-form heating rate, W.
    pub analytic: f64,
    /// Fitted ensemble-mean energy slope, W.
    pub simulated: f64,
    /// simulated / analytic.
    pub ratio: f64,
    /// Standard error of the fitted slope, W.
    pub slope_stderr: f64,
}

fn report_from(result: &TrajectoryResult, analytic: f64) -> Result<OracleReport> {
    if analytic <= 0.0 {
        return Err(Error::domain("analytic heating rate must be positive for a ratio check"));
    }
    let fit = estimate_heating_slope(result)?;
    Ok(OracleReport {
        analytic,
        simulated: fit.slope,
        ratio: fit.slope / analytic,
        slope_stderr: fit.slope_stderr,
    })
}

/// End-to-end check of the force-noise heating law Γ = S_F(ω₀)/(4m):
/// synthesize, integrate, fit, compare.
pub fn verify_heating_formula(
    m: f64,
    omega0: f64,
    spec: &NoiseSpec,
    config: &SimulationConfig,
) -> Result<OracleReport> {
    let analytic = spec.psd_at(omega0)? / (4.0 * m);
    let result = run_ensemble(m, omega0, spec, config)?;
    report_from(&result, analytic)
}

/// End-to-end check of the positional-noise law Γ_x = mω₀⁴·S_x(ω₀)/4.
///
/// `positional` is interpreted as the PSD of a position x_n(t) (m²/Hz); the
/// trap converts it to a force mω₀²·x_n(t).
///
/// With the same master seed this re-synthesizes the same underlying
/// normalized series as the plain force check, so the two ratios coincide
/// exactly when the mω₀² transfer factor enters the simulation and the
/// analytic rate consistently — which is precisely what the check pins down.
pub fn verify_positional_noise(
    m: f64,
    omega0: f64,
    positional: &NoiseSpec,
    config: &SimulationConfig,
) -> Result<OracleReport> {
    let gradient = m * omega0 * omega0;
    let analytic = gradient * gradient * positional.psd_at(omega0)? / (4.0 * m);
    let result = run_scaled_ensemble(m, omega0, positional, gradient, config)?;
    report_from(&result, analytic)
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: f64 = 1e-15;
    const OMEGA0: f64 = std::f64::consts::TAU;

    fn quick_config() -> SimulationConfig {
        SimulationConfig { ensemble_size: 100, master_seed: 11, ..SimulationConfig::default() }
    }

    #[test]
    fn config_validation() {
        let c = SimulationConfig::default();
        assert!(c.validate_for(OMEGA0).is_ok());
        assert_eq!(c.n_steps(), 10_000);
        // Too few periods.
        assert!(c.validate_for(OMEGA0 / 2.0).is_err());
        // Too coarse a step.
        assert!(c.validate_for(OMEGA0 * 2.0).is_err());
        assert!(SimulationConfig { dt: 0.0, ..c }.validate_for(OMEGA0).is_err());
        assert!(SimulationConfig { ensemble_size: 0, ..c }.validate_for(OMEGA0).is_err());
        assert!(SimulationConfig { initial_energy: -1.0, ..c }.validate_for(OMEGA0).is_err());
    }

    #[test]
    fn trajectory_rngs_are_stream_split() {
        use rand::RngCore;
        let mut a = trajectory_rng(42, 0);
        let mut b = trajectory_rng(42, 1);
        let mut a2 = trajectory_rng(42, 0);
        assert_ne!(a.next_u64(), b.next_u64());
        let mut a = trajectory_rng(42, 0);
        assert_eq!(a.next_u64(), a2.next_u64());
    }

    #[test]
    fn white_noise_ensemble_matches_analytic() {
        let spec = NoiseSpec::WhiteForce { s_f: 1e-40 };
        let report = verify_heating_formula(M, OMEGA0, &spec, &quick_config()).unwrap();
        assert!((report.analytic - 2.5e-26).abs() / 2.5e-26 < 1e-12);
        assert!(
            (0.75..1.25).contains(&report.ratio),
            "white-noise ratio {} stderr {}",
            report.ratio,
            report.slope_stderr / report.analytic
        );
    }

    #[test]
    fn positional_noise_ensemble_matches_analytic() {
        // Flat positional PSD; analytic Γ_x = mω₀⁴S_x/4.
        let s_x = 1e-22;
        let spec = NoiseSpec::WhiteForce { s_f: s_x };
        let report = verify_positional_noise(M, OMEGA0, &spec, &quick_config()).unwrap();
        let expected = M * OMEGA0.powi(4) * s_x / 4.0;
        assert!((report.analytic - expected).abs() / expected < 1e-12);
        assert!((0.75..1.25).contains(&report.ratio), "positional ratio {}", report.ratio);
    }

    #[test]
    fn one_over_f_ensemble_matches_analytic() {
        // c chosen so S_F(ω₀) equals the white case: c = S_F·ω₀.
        let spec = NoiseSpec::OneOverF { c: 1e-40 * OMEGA0 };
        let config = SimulationConfig { ensemble_size: 60, ..quick_config() };
        let report = verify_heating_formula(M, OMEGA0, &spec, &config).unwrap();
        assert!((report.analytic - 2.5e-26).abs() / 2.5e-26 < 1e-12);
        assert!((0.7..1.3).contains(&report.ratio), "1/f ratio {}", report.ratio);
    }

    #[test]
    fn ensemble_is_deterministic_and_thread_independent() {
        let spec = NoiseSpec::WhiteForce { s_f: 1e-40 };
        let config = SimulationConfig { ensemble_size: 16, ..SimulationConfig::default() };
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let a = single.install(|| run_ensemble(M, OMEGA0, &spec, &config)).unwrap();
        let b = many.install(|| run_ensemble(M, OMEGA0, &spec, &config)).unwrap();
        assert_eq!(a, b);
        // And a different seed genuinely changes the data.
        let other = SimulationConfig { master_seed: 2, ..config };
        let c = run_ensemble(M, OMEGA0, &spec, &other).unwrap();
        assert_ne!(a.ensemble_mean_energy, c.ensemble_mean_energy);
    }

    #[test]
    fn energies_are_non_negative_and_grids_consistent() {
        let spec = NoiseSpec::WhiteForce { s_f: 1e-40 };
        let config = SimulationConfig { ensemble_size: 8, ..SimulationConfig::default() };
        let r = run_ensemble(M, OMEGA0, &spec, &config).unwrap();
        assert_eq!(r.sample_times.len(), config.n_steps() + 1);
        assert_eq!(r.ensemble_mean_energy.len(), r.sample_times.len());
        assert_eq!(r.final_energies.len(), 8);
        assert!(r.ensemble_mean_energy.iter().all(|&e| e >= 0.0));
        assert!(r.final_energies.iter().all(|&e| e >= 0.0));
        assert_eq!(r.sample_times[0], 0.0);
        let dt = r.sample_times[1] - r.sample_times[0];
        assert!((dt - config.dt).abs() < 1e-15);
    }

    #[test]
    fn initial_energy_is_respected() {
        let spec = NoiseSpec::WhiteForce { s_f: 0.0 };
        let config = SimulationConfig {
            ensemble_size: 2,
            initial_energy: 3e-30,
            ..SimulationConfig::default()
        };
        let r = run_ensemble(M, OMEGA0, &spec, &config).unwrap();
        assert!((r.ensemble_mean_energy[0] - 3e-30).abs() / 3e-30 < 1e-12);
        // No noise: energy stays inside the symplectic integrator's bounded
        // oscillation band, ~(ω₀dt)²/4 ≈ 10⁻³ at the default step.
        let last = *r.ensemble_mean_energy.last().unwrap();
        assert!((last - 3e-30).abs() / 3e-30 < 1e-3);
    }
}
