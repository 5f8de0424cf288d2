//! Background-gas collisions: diffusive heating, the pressure bound, and the
//! collision rate.
//!
//! Rare collisions with residual gas particles of mass m_g heat the
//! centre-of-mass motion diffusively at
//!
//! ```text
//! Γ_c = (m_g/m) · p · σ · v̄      [W]
//! ```
//!
//! with σ = 2πL² the momentum-transfer cross-section of a sphere of radius L
//! and v̄ = √(8k_BT/(πm_g)) the Maxwell–Boltzmann mean speed. Inverting Γ_c = Υ
//! gives the maximum tolerable pressure for a collapse-heating measurement,
//! and n·σ·v̄ with n = p/(k_BT) gives the rate of individual collisions.
//!
//! The cross-section is defined only for spheres; cube bodies raise
//! [`Error::UnsupportedShape`].

use crate::body::{RigidBody, Shape};
use crate::constants::{BOLTZMANN_KB, HELIUM_MASS};
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Residual-gas environment around the trapped body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasEnvironment {
    /// Pressure p, Pa.
    pub pressure: f64,
    /// Temperature T, K.
    pub temperature: f64,
    /// Mass of one gas particle m_g, kg.
    pub particle_mass: f64,
}

impl GasEnvironment {
    pub fn new(pressure: f64, temperature: f64, particle_mass: f64) -> Result<Self> {
        ensure_non_negative(pressure, "gas pressure")?;
        ensure_positive(temperature, "gas temperature")?;
        ensure_positive(particle_mass, "gas particle mass")?;
        Ok(GasEnvironment { pressure, temperature, particle_mass })
    }

    /// Same environment at a different pressure.
    pub fn with_pressure(&self, pressure: f64) -> Result<Self> {
        GasEnvironment::new(pressure, self.temperature, self.particle_mass)
    }

    /// Number density n = p/(k_B·T), 1/m³.
    pub fn number_density(&self) -> f64 {
        self.pressure / (BOLTZMANN_KB * self.temperature)
    }
}

impl Default for GasEnvironment {
    /// Helium at 300 K and 10⁻¹³ Pa — the reference vacuum scenario.
    fn default() -> Self {
        GasEnvironment { pressure: 1e-13, temperature: 300.0, particle_mass: HELIUM_MASS }
    }
}

/// Maxwell–Boltzmann mean speed v̄ = √(8k_BT/(π·m_g)), m/s.
pub fn mean_speed(env: &GasEnvironment) -> f64 {
    (8.0 * BOLTZMANN_KB * env.temperature / (std::f64::consts::PI * env.particle_mass)).sqrt()
}

/// Collision cross-section σ = 2πL² for a sphere of radius L.
///
/// This is the momentum-transfer convention consistent with both the heating
/// formula and the collision-interval estimate; it is 2× the geometric πL².
pub fn cross_section(body: &RigidBody) -> Result<f64> {
    match body.shape {
        Shape::Sphere { radius } => Ok(2.0 * std::f64::consts::PI * radius * radius),
        Shape::Cube { .. } => {
            Err(Error::UnsupportedShape("gas collision cross-section is defined for spheres"))
        }
    }
}

/// Diffusive collision heating Γ_c = (m_g/m)·p·σ·v̄, W. Linear in pressure.
pub fn collision_heating(body: &RigidBody, env: &GasEnvironment) -> Result<f64> {
    let sigma = cross_section(body)?;
    Ok(env.particle_mass / body.mass() * env.pressure * sigma * mean_speed(env))
}

/// Largest background pressure at which collision heating stays below a given
/// power: p_max = Υ·m/(σ·v̄·m_g), Pa. Exact inverse of [`collision_heating`].
pub fn max_pressure(upsilon: f64, body: &RigidBody, env: &GasEnvironment) -> Result<f64> {
    ensure_positive(upsilon, "heating rate")?;
    let sigma = cross_section(body)?;
    Ok(upsilon * body.mass() / (sigma * mean_speed(env) * env.particle_mass))
}

/// Rate of individual gas collisions n·σ·v̄ with n = p/(k_BT), 1/s.
pub fn collision_rate(body: &RigidBody, env: &GasEnvironment) -> Result<f64> {
    let sigma = cross_section(body)?;
    Ok(env.number_density() * sigma * mean_speed(env))
}
