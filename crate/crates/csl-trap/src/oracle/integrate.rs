//! Symplectic integration of a driven harmonic oscillator.
//!
//! Kick–drift–kick velocity Verlet (leapfrog family) for
//! ẍ = −ω₀²x + F(t)/m, with the external force held constant across each step
//! (the noise enters as one impulse F_i·dt per step). Being symplectic, the
//! unforced integrator has a bounded energy oscillation of order (ω₀·dt)²/4
//! and no secular drift, so any fitted energy slope comes from the forcing,
//! not the integrator.

use super::TrajectoryResult;
use crate::error::{ensure_positive, Error, Result};

/// Phase-space state of the oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    /// Position, m.
    pub x: f64,
    /// Velocity, m/s.
    pub v: f64,
}

impl OscillatorState {
    /// At-rest state.
    pub fn at_rest() -> Self {
        OscillatorState { x: 0.0, v: 0.0 }
    }

    /// State with the given energy, placed entirely in the velocity
    /// (x = 0, v = √(2E/m)).
    pub fn from_energy(m: f64, energy: f64) -> Result<Self> {
        ensure_positive(m, "mass")?;
        if !(energy >= 0.0 && energy.is_finite()) {
            return Err(Error::domain(format!("initial energy must be ≥ 0, got {energy}")));
        }
        Ok(OscillatorState { x: 0.0, v: (2.0 * energy / m).sqrt() })
    }

    /// Motional energy E = ½mv² + ½mω₀²x², J.
    pub fn energy(&self, m: f64, omega0: f64) -> f64 {
        0.5 * m * (self.v * self.v + omega0 * omega0 * self.x * self.x)
    }
}

/// Integrate one trajectory under the given per-step forces (N), recording the
/// energy at every step boundary (`forces.len() + 1` samples including t = 0).
///
/// Requires ω₀·dt < 0.1; a coarser step is a configuration error, not a
/// silently degraded run.
pub fn integrate_oscillator(
    m: f64,
    omega0: f64,
    forces: &[f64],
    dt: f64,
    initial: OscillatorState,
) -> Result<TrajectoryResult> {
    ensure_positive(m, "mass")?;
    ensure_positive(omega0, "omega0")?;
    ensure_positive(dt, "time step")?;
    if omega0 * dt >= 0.1 {
        return Err(Error::Config(format!(
            "integrator resolution: omega0·dt = {:.4} must stay below 0.1 (reduce the time step)",
            omega0 * dt
        )));
    }
    let w2 = omega0 * omega0;
    let mut state = initial;
    let n = forces.len();
    let mut sample_times = Vec::with_capacity(n + 1);
    let mut energies = Vec::with_capacity(n + 1);
    sample_times.push(0.0);
    energies.push(state.energy(m, omega0));
    for (i, &force) in forces.iter().enumerate() {
        // Kick–drift–kick with this step's force applied in both half-kicks.
        let a0 = force / m - w2 * state.x;
        let v_half = state.v + 0.5 * dt * a0;
        state.x += dt * v_half;
        let a1 = force / m - w2 * state.x;
        state.v = v_half + 0.5 * dt * a1;
        sample_times.push((i + 1) as f64 * dt);
        energies.push(state.energy(m, omega0));
    }
    let last = *energies.last().expect("at least the initial sample exists");
    Ok(TrajectoryResult {
        sample_times,
        ensemble_mean_energy: energies,
        final_energies: vec![last],
    })
}
