//! Physical constants (SI, CODATA-2018 values) and reference material data.
//!
//! Values are fixed compile-time constants — never mutated at runtime — so every
//! result in the crate is reproducible bit-for-bit.

/// ℏ — reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Unified atomic mass unit, kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// u — nucleon mass as it enters the collapse-rate normalisation, kg.
///
/// The collapse-model literature normalises the mass-proportional coupling "per
/// nucleon" and in practice uses 1 u; the headline heating rates reproduce only
/// with this convention (the proton mass would shift them by ~1.5%).
pub const NUCLEON_MASS_U: f64 = ATOMIC_MASS_UNIT;

/// k_B — Boltzmann constant, J/K (exact).
pub const BOLTZMANN_KB: f64 = 1.380_649e-23;

/// e — elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// ε₀ — vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY_EPS0: f64 = 8.854_187_812_8e-12;

/// µ_B — Bohr magneton, J/T.
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;

/// Density of osmium, kg/m³ — the reference material for test bodies (densest
/// stable element; maximises collapse heating per unit volume).
pub const OSMIUM_DENSITY: f64 = 22_587.0;

/// Mass of a helium-4 atom (4 u), kg — default residual-gas species.
pub const HELIUM_MASS: f64 = 4.0 * ATOMIC_MASS_UNIT;

/// Mass of a hydrogen molecule (2 u), kg.
pub const H2_MASS: f64 = 2.0 * ATOMIC_MASS_UNIT;
