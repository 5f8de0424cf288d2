//! Collapse-model parameters and the energy-raising rate Υ.
//!
//! The model is parameterised by a nucleon collapse rate λ (1/s) and a
//! correlation length r_c (m). An equivalent parameter pair used in parts of the
//! literature is γ = (4π r_c²)^{3/2}·λ together with α = r_c⁻²; conversions round
//! trip exactly.
//!
//! The centre-of-mass heating rate of a rigid body is
//!
//! ```text
//! Υ = χ(L/r_c) · ℏ² · λ · r_c · ρ / u²      [W]
//! ```
//!
//! with χ the geometry factor of [`crate::shape_factor`], ρ the mass density and
//! u the nucleon mass. Υ is strictly linear in λ, which is what makes the
//! detectability threshold λ_min an exact analytic inversion.

use crate::body::RigidBody;
use crate::constants::{HBAR, NUCLEON_MASS_U};
use crate::error::{ensure_positive, Result};
use crate::shape_factor::{chi, ShapeKind};

/// Canonical (historical) collapse rate, 1/s.
pub const GRW_LAMBDA: f64 = 1e-16;
/// Canonical correlation length, m.
pub const GRW_R_C: f64 = 1e-7;

/// Collapse-model parameter point (λ, r_c).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CslParameters {
    /// Nucleon collapse rate λ, 1/s.
    pub lambda: f64,
    /// Correlation length r_c, m.
    pub r_c: f64,
}

impl CslParameters {
    pub fn new(lambda: f64, r_c: f64) -> Result<Self> {
        ensure_positive(lambda, "collapse rate lambda")?;
        ensure_positive(r_c, "correlation length r_c")?;
        Ok(CslParameters { lambda, r_c })
    }

    /// The canonical parameter point (λ = 10⁻¹⁶ s⁻¹, r_c = 10⁻⁷ m).
    pub fn grw() -> Self {
        CslParameters { lambda: GRW_LAMBDA, r_c: GRW_R_C }
    }

    /// Equivalent strength parameter γ = (4π r_c²)^{3/2}·λ, m³/s.
    pub fn gamma(&self) -> f64 {
        (4.0 * std::f64::consts::PI * self.r_c * self.r_c).powf(1.5) * self.lambda
    }

    /// Equivalent inverse-square length α = r_c⁻², 1/m².
    pub fn alpha(&self) -> f64 {
        1.0 / (self.r_c * self.r_c)
    }

    /// Reconstruct (λ, r_c) from the (γ, α) pair.
    pub fn from_gamma_alpha(gamma: f64, alpha: f64) -> Result<Self> {
        ensure_positive(gamma, "gamma")?;
        ensure_positive(alpha, "alpha")?;
        let r_c = 1.0 / alpha.sqrt();
        let lambda = gamma / (4.0 * std::f64::consts::PI * r_c * r_c).powf(1.5);
        CslParameters::new(lambda, r_c)
    }
}

/// Both equivalent parameters (γ, α) for a parameter point.
pub fn csl_param_convert(csl: &CslParameters) -> (f64, f64) {
    (csl.gamma(), csl.alpha())
}

/// Energy-raising rate Υ = χ(L/r_c)·ℏ²·λ·r_c·ρ/u² of the body's centre-of-mass
/// motion, W. Linear in λ; peaks in r_c where χ(L/r_c)·r_c does.
pub fn energy_raising_rate(body: &RigidBody, csl: &CslParameters) -> Result<f64> {
    let x = body.length() / csl.r_c;
    let chi = chi(ShapeKind::from(&body.shape), x)?;
    Ok(chi * HBAR * HBAR * csl.lambda * csl.r_c * body.density / (NUCLEON_MASS_U * NUCLEON_MASS_U))
}

/// Presentation helper: a heating rate (W) as a temperature slope in nK/min,
/// ΔT = P·60 s/k_B. Everything internal stays in SI; use only at output.
pub fn watts_to_nanokelvin_per_minute(power: f64) -> f64 {
    power * 60.0 / crate::constants::BOLTZMANN_KB * 1e9
}
