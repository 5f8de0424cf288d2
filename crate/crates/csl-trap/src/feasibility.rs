//! Heating budgets, the detectability threshold λ_min, and the parameter-space
//! map.
//!
//! The collapse signal Υ is strictly linear in λ, so the smallest detectable
//! collapse rate at a given correlation length is the exact inversion
//!
//! ```text
//! λ_min(r_c) = Γ_total · u² / (χ(L/r_c) · ℏ² · r_c · ρ)
//! ```
//!
//! where Γ_total is the summed environmental heating floor (mechanical,
//! electric, magnetic, rf-induced-dipole, gas collisions), each evaluated at
//! the secular frequency ω₀ of the trap holding the body. [`detectability_map`]
//! sweeps this threshold over a (r_c, body size, pressure) grid; the row set is
//! deterministic and safe to compute in parallel.
//!
//! Detection bookkeeping: a motional-energy measurement with phase-space
//! resolution Δx·Δp = 2n̄ℏ resolves the energy scale E₀ = n̄ℏω₀, so a heating
//! power Υ becomes visible after roughly E₀/Υ seconds.

use rayon::prelude::*;

use crate::body::RigidBody;
use crate::csl::{energy_raising_rate, CslParameters};
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::gas::{collision_heating, GasEnvironment};
use crate::grid::log_spaced;
use crate::noise::{
    electric_heating, electric_psd, induced_dipole_heating, magnetic_heating, mathieu_q,
    mechanical_heating, mechanical_psd, trap_frequency, ElectricNoiseParams, MagneticNoiseParams,
    MechanicalNoiseParams, TrapGeometry,
};

/// Bundle of every environmental-noise coefficient set.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseParams {
    pub mechanical: MechanicalNoiseParams,
    pub electric: ElectricNoiseParams,
    pub magnetic: MagneticNoiseParams,
}

/// Environmental heating channels, in the fixed order used to break ties when
/// picking the dominant source (earlier wins).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseSource {
    Mechanical,
    Electric,
    Magnetic,
    InducedDipole,
    Collision,
}

impl NoiseSource {
    pub fn label(&self) -> &'static str {
        match self {
            NoiseSource::Mechanical => "mechanical",
            NoiseSource::Electric => "electric",
            NoiseSource::Magnetic => "magnetic",
            NoiseSource::InducedDipole => "induced_dipole",
            NoiseSource::Collision => "collision",
        }
    }
}

impl std::fmt::Display for NoiseSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// All heating rates of one scenario, each in W, evaluated at the trap's
/// secular frequency ω₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatingBudget {
    /// Collapse-noise signal Υ.
    pub upsilon_csl: f64,
    pub gamma_mechanical: f64,
    pub gamma_electric: f64,
    pub gamma_magnetic: f64,
    pub gamma_induced: f64,
    pub gamma_collision: f64,
    /// Secular frequency the rates were evaluated at, rad/s.
    pub omega0: f64,
}

impl HeatingBudget {
    /// Every non-collapse channel with its source tag, in tie-break order.
    pub fn components(&self) -> [(NoiseSource, f64); 5] {
        [
            (NoiseSource::Mechanical, self.gamma_mechanical),
            (NoiseSource::Electric, self.gamma_electric),
            (NoiseSource::Magnetic, self.gamma_magnetic),
            (NoiseSource::InducedDipole, self.gamma_induced),
            (NoiseSource::Collision, self.gamma_collision),
        ]
    }

    /// Summed environmental heating floor, W.
    pub fn total_noise(&self) -> f64 {
        self.components().iter().map(|(_, g)| g).sum()
    }

    /// Largest environmental channel; exact ties go to the earliest entry in
    /// the [`NoiseSource`] order.
    pub fn dominant(&self) -> NoiseSource {
        let mut best = (NoiseSource::Mechanical, f64::NEG_INFINITY);
        for (source, gamma) in self.components() {
            if gamma > best.1 {
                best = (source, gamma);
            }
        }
        best.0
    }

    /// Whether the collapse signal exceeds the environmental floor.
    pub fn detectable(&self) -> bool {
        self.upsilon_csl > self.total_noise()
    }
}

/// Evaluate every heating channel of a scenario at the trap's secular
/// frequency (the mechanical PSD at f = ω₀/2π, the electric PSD at ω₀).
pub fn heating_budget(
    body: &RigidBody,
    trap: &TrapGeometry,
    env: &GasEnvironment,
    noise: &NoiseParams,
    csl: &CslParameters,
) -> Result<HeatingBudget> {
    let m = body.mass();
    let omega0 = trap_frequency(body.charge, trap, m)?;
    let f = omega0 / std::f64::consts::TAU;
    let s_x = mechanical_psd(f, &noise.mechanical)?;
    let gamma_mechanical = mechanical_heating(m, omega0, s_x)?;
    let s_e = electric_psd(omega0, trap, &noise.electric)?;
    let gamma_electric = electric_heating(body.charge, m, s_e)?;
    let gamma_magnetic = magnetic_heating(body.magnetic_moment, trap, m, noise.magnetic.s_b)?;
    let gamma_induced = induced_dipole_heating(body, trap, noise.magnetic.s_b)?;
    let gamma_collision = collision_heating(body, env)?;
    let upsilon_csl = energy_raising_rate(body, csl)?;
    Ok(HeatingBudget {
        upsilon_csl,
        gamma_mechanical,
        gamma_electric,
        gamma_magnetic,
        gamma_induced,
        gamma_collision,
        omega0,
    })
}

/// Smallest detectable collapse rate given an environmental floor: the λ at
/// which Υ(λ, r_c) equals `total_noise`. Exact because Υ is linear in λ.
///
/// A zero floor is degenerate (the threshold would be 0: any λ detectable).
pub fn lambda_min_for_noise(total_noise: f64, body: &RigidBody, r_c: f64) -> Result<f64> {
    ensure_non_negative(total_noise, "noise floor")?;
    if total_noise == 0.0 {
        return Err(Error::Degenerate(
            "a zero noise floor gives no finite detectability threshold".into(),
        ));
    }
    let rate_per_lambda = energy_raising_rate(body, &CslParameters::new(1.0, r_c)?)?;
    if rate_per_lambda <= 0.0 {
        return Err(Error::Degenerate(format!(
            "collapse heating underflows at r_c = {r_c} for this body; threshold not representable"
        )));
    }
    Ok(total_noise / rate_per_lambda)
}

/// [`lambda_min_for_noise`] with the floor taken from a freshly evaluated
/// heating budget for the scenario.
pub fn lambda_min(
    r_c: f64,
    body: &RigidBody,
    trap: &TrapGeometry,
    env: &GasEnvironment,
    noise: &NoiseParams,
) -> Result<f64> {
    let budget = heating_budget(body, trap, env, noise, &CslParameters::grw())?;
    lambda_min_for_noise(budget.total_noise(), body, r_c)
}

/// How the trap size d adapts to the body when sweeping sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrapSizeRule {
    /// Always use the template's d.
    Fixed,
    /// Use the template's d unless the secular frequency falls below `f_min`
    /// (Hz); then shrink d exactly until f = f_min. Noise models get shaky at
    /// extremely low frequencies, so heavier bodies get tighter traps.
    FrequencyFloor { f_min: f64 },
}

/// Apply a [`TrapSizeRule`], returning the adjusted trap. ω₀·d is invariant
/// for a fixed body, so the shrunk size is d·f/f_min.
pub fn apply_trap_size_rule(
    rule: TrapSizeRule,
    body: &RigidBody,
    template: &TrapGeometry,
) -> Result<TrapGeometry> {
    let omega0 = trap_frequency(body.charge, template, body.mass())?;
    match rule {
        TrapSizeRule::Fixed => Ok(*template),
        TrapSizeRule::FrequencyFloor { f_min } => {
            ensure_positive(f_min, "frequency floor")?;
            let f = omega0 / std::f64::consts::TAU;
            if f >= f_min {
                Ok(*template)
            } else {
                template.with_d(template.d * f / f_min)
            }
        }
    }
}

/// Grid specification for the detectability map.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSpec {
    /// Correlation lengths r_c, m; strictly increasing.
    pub r_c_grid: Vec<f64>,
    /// Body sizes L, m; strictly increasing.
    pub l_values: Vec<f64>,
    /// Background pressures, Pa; strictly increasing.
    pub pressures: Vec<f64>,
    /// Body whose size is replaced by each L (material/charge/moment kept).
    pub body_template: RigidBody,
    pub trap_template: TrapGeometry,
    pub noise: NoiseParams,
    /// Gas environment whose pressure is replaced by each grid pressure.
    pub env_template: GasEnvironment,
    pub trap_size_rule: TrapSizeRule,
}

impl Default for MapSpec {
    /// 121 log-spaced r_c over [10⁻⁹, 10⁻⁴] m; L ∈ {0.1, 1, 10, 100} µm;
    /// p ∈ {10⁻¹⁴, 10⁻¹²} Pa; reference body/trap/noise; 0.01 Hz trap floor.
    fn default() -> Self {
        MapSpec {
            r_c_grid: log_spaced(1e-9, 1e-4, 121).expect("static grid bounds are valid"),
            l_values: vec![1e-7, 1e-6, 1e-5, 1e-4],
            pressures: vec![1e-14, 1e-12],
            body_template: RigidBody::reference_sphere(),
            trap_template: TrapGeometry::default(),
            noise: NoiseParams::default(),
            env_template: GasEnvironment::default(),
            trap_size_rule: TrapSizeRule::FrequencyFloor { f_min: 0.01 },
        }
    }
}

impl MapSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, grid) in [
            ("r_c grid", &self.r_c_grid),
            ("L grid", &self.l_values),
            ("pressure grid", &self.pressures),
        ] {
            if grid.is_empty() {
                return Err(Error::domain(format!("{name} must not be empty")));
            }
            if grid.iter().any(|v| !(*v > 0.0)) {
                return Err(Error::domain(format!("{name} must be positive throughout")));
            }
            if grid.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::domain(format!("{name} must be strictly increasing")));
            }
        }
        Ok(())
    }
}

/// One point of the detectability map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapRow {
    pub r_c: f64,
    pub l: f64,
    pub pressure: f64,
    pub lambda_min: f64,
    pub dominant_noise_source: NoiseSource,
    pub omega0: f64,
    /// Trap size after the sizing rule, m.
    pub d_used: f64,
}

/// Sweep λ_min over the full (r_c × L × pressure) grid.
///
/// Row order is deterministic: r_c outermost, then L, then pressure, each
/// ascending. The noise floor does not depend on r_c, so each (L, p) scenario
/// budget is evaluated once; rows are then computed in parallel and merged by
/// index, making the output independent of thread count.
pub fn detectability_map(spec: &MapSpec) -> Result<Vec<MapRow>> {
    spec.validate()?;

    struct Scenario {
        body: RigidBody,
        pressure: f64,
        total_noise: f64,
        dominant: NoiseSource,
        omega0: f64,
        d_used: f64,
    }

    let mut scenarios = Vec::with_capacity(spec.l_values.len() * spec.pressures.len());
    for &l in &spec.l_values {
        let body = spec.body_template.with_length(l)?;
        let trap = apply_trap_size_rule(spec.trap_size_rule, &body, &spec.trap_template)?;
        for &pressure in &spec.pressures {
            let env = spec.env_template.with_pressure(pressure)?;
            let budget = heating_budget(&body, &trap, &env, &spec.noise, &CslParameters::grw())?;
            scenarios.push(Scenario {
                body,
                pressure,
                total_noise: budget.total_noise(),
                dominant: budget.dominant(),
                omega0: budget.omega0,
                d_used: trap.d,
            });
        }
    }

    let per_r_c = scenarios.len();
    (0..spec.r_c_grid.len() * per_r_c)
        .into_par_iter()
        .map(|i| {
            let r_c = spec.r_c_grid[i / per_r_c];
            let s = &scenarios[i % per_r_c];
            Ok(MapRow {
                r_c,
                l: s.body.length(),
                pressure: s.pressure,
                lambda_min: lambda_min_for_noise(s.total_noise, &s.body, r_c)?,
                dominant_noise_source: s.dominant,
                omega0: s.omega0,
                d_used: s.d_used,
            })
        })
        .collect()
}

/// One point of the trap-size sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// Trap size, m.
    pub d: f64,
    /// Secular frequency, Hz.
    pub f: f64,
    pub gamma_mechanical: f64,
    pub gamma_electric: f64,
    /// Collapse signal (trap-independent, constant down the sweep), W.
    pub upsilon: f64,
}

/// Mechanical and electric heating versus trap size for a fixed body, on a
/// log-spaced d grid (ascending). The collapse signal column is constant.
pub fn heating_vs_size_sweep(
    body: &RigidBody,
    trap_template: &TrapGeometry,
    noise: &NoiseParams,
    csl: &CslParameters,
    d_lo: f64,
    d_hi: f64,
    n_points: usize,
) -> Result<Vec<SweepRow>> {
    let upsilon = energy_raising_rate(body, csl)?;
    let m = body.mass();
    log_spaced(d_lo, d_hi, n_points)?
        .into_iter()
        .map(|d| {
            let trap = trap_template.with_d(d)?;
            let omega0 = trap_frequency(body.charge, &trap, m)?;
            let f = omega0 / std::f64::consts::TAU;
            let s_x = mechanical_psd(f, &noise.mechanical)?;
            let gamma_mechanical = mechanical_heating(m, omega0, s_x)?;
            let s_e = electric_psd(omega0, &trap, &noise.electric)?;
            let gamma_electric = electric_heating(body.charge, m, s_e)?;
            Ok(SweepRow { d, f, gamma_mechanical, gamma_electric, upsilon })
        })
        .collect()
}

/// Phase-space resolution of the motional-energy measurement: Δx·Δp = 2n̄ℏ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionModel {
    /// Resolution number n̄ ≥ 1 (n̄ = 1 is the quantum limit).
    pub nbar: f64,
}

impl DetectionModel {
    pub fn new(nbar: f64) -> Result<Self> {
        if !(nbar.is_finite() && nbar >= 1.0) {
            return Err(Error::domain(format!(
                "resolution number nbar must be ≥ 1, got {nbar}"
            )));
        }
        Ok(DetectionModel { nbar })
    }
}

impl Default for DetectionModel {
    /// n̄ = 500: comfortably above the quantum limit, yet far colder than any
    /// thermal environment.
    fn default() -> Self {
        DetectionModel { nbar: 500.0 }
    }
}

/// Smallest resolvable motional energy E₀ = n̄ℏω₀, J.
pub fn detection_energy(model: &DetectionModel, omega0: f64) -> Result<f64> {
    ensure_positive(omega0, "omega0")?;
    Ok(model.nbar * crate::constants::HBAR * omega0)
}

/// Time for a heating power to accumulate one resolvable energy: E₀/Υ, s.
pub fn detection_time(e0: f64, upsilon: f64) -> Result<f64> {
    ensure_non_negative(e0, "detection energy")?;
    ensure_positive(upsilon, "heating rate")?;
    Ok(e0 / upsilon)
}

/// Mathieu drive-strength parameter of a scenario (re-exported convenience).
pub fn scenario_mathieu_q(body: &RigidBody, trap: &TrapGeometry) -> Result<f64> {
    mathieu_q(body.charge, trap, body.mass())
}
