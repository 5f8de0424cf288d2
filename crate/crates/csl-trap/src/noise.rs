//! Environmental noise models and the noise-to-heating transfer.
//!
//! A fluctuating quantity R that couples to the body with force gradient ∂F/∂R
//! heats the secular motion at
//!
//! ```text
//! Γ = (1/4m) (∂F/∂R)² S_R(ω₀)      [W]
//! ```
//!
//! where S_R is the one-sided power spectral density of R evaluated at the trap
//! frequency ω₀. This module provides that transfer plus concrete PSD models:
//!
//! * **Mechanical** electrode vibration, a seismic-style spectrum
//!   `S_x = a₁²f⁻⁵ + a₂²(f₀²⁰ + f²⁰)⁻¹ + a₃²f⁻¹` (m²/Hz, f in Hz) whose second
//!   term is an aggressively low-passed suspension plateau;
//! * **Electric** field noise `S_E = [(b₁ + b₂V_Q²)d⁻² + b₃d⁻⁴]·ω⁻¹`
//!   ((V/m)²/Hz): technical voltage noise scaling as d⁻², patch potentials as
//!   d⁻⁴, both with a 1/f spectrum;
//! * **Magnetic** field noise with flat PSD S_B coupling to a permanent moment µ
//!   through the conservative gradient estimate ∂F/∂B ≈ µ/d;
//! * **rf-induced dipole**: the drive field E = (V_AC/d²)·L polarises the body,
//!   d₀ = ε₀L³E, and magnetic noise couples at the drive frequency — an
//!   upper-bound estimate that lands many orders below everything else.
//!
//! Trap plumbing (secular frequency, Mathieu q) lives here too since every
//! heating evaluation needs ω₀.

use crate::body::RigidBody;
use crate::constants::VACUUM_PERMITTIVITY_EPS0;
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Linear Paul-trap geometry and drive parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapGeometry {
    /// Electrode-surface-to-centre distance d, m.
    pub d: f64,
    /// Static quadrupole voltage V_Q, V.
    pub v_q: f64,
    /// rf drive amplitude V_AC, V.
    pub v_ac: f64,
    /// rf drive angular frequency Ω_AC, rad/s.
    pub omega_ac: f64,
    /// Geometric efficiency factor κ of the static quadrupole.
    pub kappa: f64,
}

impl TrapGeometry {
    pub fn new(d: f64, v_q: f64, v_ac: f64, omega_ac: f64, kappa: f64) -> Result<Self> {
        ensure_positive(d, "trap size d")?;
        ensure_positive(v_q, "static voltage V_Q")?;
        ensure_positive(kappa, "geometry factor kappa")?;
        ensure_non_negative(v_ac, "rf amplitude V_AC")?;
        ensure_non_negative(omega_ac, "rf frequency Omega_AC")?;
        Ok(TrapGeometry { d, v_q, v_ac, omega_ac, kappa })
    }

    /// Same trap with a different size d.
    pub fn with_d(&self, d: f64) -> Result<Self> {
        TrapGeometry::new(d, self.v_q, self.v_ac, self.omega_ac, self.kappa)
    }
}

impl Default for TrapGeometry {
    /// Reference trap: d = 1 cm, V_Q = 20 V, V_AC = 300 V, Ω_AC = 2π·10 rad/s,
    /// κ = 2. The rf defaults put the Mathieu q near 0.2 for the reference body.
    fn default() -> Self {
        TrapGeometry {
            d: 0.01,
            v_q: 20.0,
            v_ac: 300.0,
            omega_ac: 2.0 * std::f64::consts::PI * 10.0,
            kappa: 2.0,
        }
    }
}

/// Coefficients of the mechanical-vibration PSD (see module docs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanicalNoiseParams {
    /// a₁ — steep low-frequency term coefficient (S in m²/Hz with f in Hz).
    pub a1: f64,
    /// a₂ — suspension-plateau term coefficient.
    pub a2: f64,
    /// a₃ — 1/f flicker term coefficient.
    pub a3: f64,
    /// f₀ — plateau corner frequency, Hz.
    pub f0: f64,
}

impl Default for MechanicalNoiseParams {
    fn default() -> Self {
        MechanicalNoiseParams { a1: 1.5e-15, a2: 1500e-15, a3: 0.0006e-15, f0: 0.65 }
    }
}

/// Coefficients of the electric-field-noise PSD (see module docs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectricNoiseParams {
    /// b₁ — voltage-noise term, V².
    pub b1: f64,
    /// b₂ — drive-proportional voltage-noise term, dimensionless.
    pub b2: f64,
    /// b₃ — patch-potential term, V²·m².
    pub b3: f64,
}

impl Default for ElectricNoiseParams {
    fn default() -> Self {
        ElectricNoiseParams { b1: 1.7e-14, b2: 1.1e-17, b3: 2.6e-19 }
    }
}

/// Magnetic-field noise: flat one-sided PSD S_B, T²/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticNoiseParams {
    pub s_b: f64,
}

impl Default for MagneticNoiseParams {
    fn default() -> Self {
        MagneticNoiseParams { s_b: 1e-19 }
    }
}

/// Generic noise-to-heating transfer Γ = (1/4m)(∂F/∂R)²·S_R(ω₀), W.
pub fn heating_rate_general(m: f64, df_dr: f64, s_r_at_omega0: f64) -> Result<f64> {
    ensure_positive(m, "mass")?;
    ensure_non_negative(s_r_at_omega0, "noise PSD")?;
    if !df_dr.is_finite() {
        return Err(Error::domain("force gradient must be finite"));
    }
    Ok(df_dr * df_dr * s_r_at_omega0 / (4.0 * m))
}

/// Mechanical position-noise PSD S_x(f), m²/Hz.
///
/// The f²⁰ and f₀²⁰ powers are combined in log space: the plateau term is
/// evaluated as `a₂²·e^{−20·ln f_max}/(1 + e^{20(ln f_min − ln f_max)})`, which
/// never forms the huge intermediate powers directly.
pub fn mechanical_psd(f: f64, params: &MechanicalNoiseParams) -> Result<f64> {
    ensure_positive(f, "frequency f")?;
    let MechanicalNoiseParams { a1, a2, a3, f0 } = *params;
    let term1 = a1 * a1 / f.powi(5);
    let (lmax, lmin) = if f > f0 { (f.ln(), f0.ln()) } else { (f0.ln(), f.ln()) };
    let term2 = a2 * a2 * (-20.0 * lmax).exp() / (1.0 + (20.0 * (lmin - lmax)).exp());
    let term3 = a3 * a3 / f;
    Ok(term1 + term2 + term3)
}

/// Mechanical heating Γ_x = m·ω₀⁴·S_x/4, W — the general transfer with
/// ∂F/∂x = mω₀² (the trap spring constant).
pub fn mechanical_heating(m: f64, omega0: f64, s_x: f64) -> Result<f64> {
    ensure_positive(omega0, "omega0")?;
    heating_rate_general(m, m * omega0 * omega0, s_x)
}

/// Electric-field-noise PSD S_E(ω) = [(b₁ + b₂V_Q²)d⁻² + b₃d⁻⁴]/ω, (V/m)²/Hz.
///
/// ω is the angular frequency in rad/s; the 1/f form makes S_E·ω constant.
pub fn electric_psd(omega: f64, trap: &TrapGeometry, params: &ElectricNoiseParams) -> Result<f64> {
    ensure_positive(omega, "omega")?;
    let d2 = trap.d * trap.d;
    let numerator = (params.b1 + params.b2 * trap.v_q * trap.v_q) / d2 + params.b3 / (d2 * d2);
    Ok(numerator / omega)
}

/// Electric heating Γ_E = q²·S_E(ω₀)/(4m), W — the general transfer with
/// ∂F/∂E = q. Zero for an uncharged body.
pub fn electric_heating(q: f64, m: f64, s_e: f64) -> Result<f64> {
    heating_rate_general(m, q, s_e)
}

/// Secular trap frequency ω₀ = √(κ·q·V_Q/(m·d²)), rad/s.
///
/// Scales exactly as 1/d and as √V_Q. An uncharged body has no static-quadrupole
/// confinement, so q ≤ 0 is a domain error.
pub fn trap_frequency(q: f64, trap: &TrapGeometry, m: f64) -> Result<f64> {
    ensure_positive(q, "charge q")?;
    ensure_positive(m, "mass")?;
    Ok((trap.kappa * q * trap.v_q / (m * trap.d * trap.d)).sqrt())
}

/// Magnetic heating Γ_B = (µ/d)²·S_B/(4m), W, from the conservative gradient
/// estimate ∂F/∂B ≈ µ/d.
pub fn magnetic_heating(mu: f64, trap: &TrapGeometry, m: f64, s_b: f64) -> Result<f64> {
    ensure_non_negative(mu, "magnetic moment")?;
    heating_rate_general(m, mu / trap.d, s_b)
}

/// Heating of the rf-induced dipole by magnetic noise at the drive frequency:
/// Q_AC = V_AC/d², E = Q_AC·L, d₀ = ε₀L³E, Γ = (Ω_AC·d₀)²·S_B/(4m), W.
///
/// An upper bound (the balanced rf forces make the true coupling smaller);
/// with any realistic parameters it is negligible (≲ 10⁻⁵⁰ W). Sphere only.
pub fn induced_dipole_heating(body: &RigidBody, trap: &TrapGeometry, s_b: f64) -> Result<f64> {
    match body.shape {
        crate::body::Shape::Sphere { .. } => {}
        crate::body::Shape::Cube { .. } => {
            return Err(Error::UnsupportedShape("induced-dipole estimate is defined for spheres"))
        }
    }
    let l = body.length();
    let q_ac = trap.v_ac / (trap.d * trap.d);
    let field = q_ac * l;
    let d0 = VACUUM_PERMITTIVITY_EPS0 * l * l * l * field;
    heating_rate_general(body.mass(), trap.omega_ac * d0, s_b)
}

/// Mathieu stability parameter q_M = 2·q·V_AC/(m·Ω_AC²·d²) (sign convention:
/// magnitude only). Values ≲ 0.4 indicate comfortably stable rf confinement.
pub fn mathieu_q(q: f64, trap: &TrapGeometry, m: f64) -> Result<f64> {
    ensure_positive(m, "mass")?;
    if trap.omega_ac <= 0.0 {
        return Err(Error::domain("Mathieu q requires a non-zero rf drive frequency"));
    }
    Ok(2.0 * q * trap.v_ac / (m * trap.omega_ac * trap.omega_ac * trap.d * trap.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ELEMENTARY_CHARGE;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn general_transfer_arithmetic() {
        assert_eq!(heating_rate_general(1e-15, 1.0, 4e-15).unwrap(), 1.0);
        assert_eq!(heating_rate_general(1.0, 5.0, 0.0).unwrap(), 0.0);
        // Quadratic in the gradient.
        let g1 = heating_rate_general(2.0, 1.0, 8.0).unwrap();
        let g2 = heating_rate_general(2.0, 2.0, 8.0).unwrap();
        assert_eq!(g2, 4.0 * g1);
        assert!(heating_rate_general(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn mechanical_psd_reference_points() {
        let p = MechanicalNoiseParams::default();
        // Plateau region: a₂²/f₀²⁰ ≈ 1.24×10⁻²⁰ plus the steep term.
        let plateau = p.a2 * p.a2 * (-20.0 * p.f0.ln()).exp();
        assert!(rel(plateau, 1.242e-20) < 1e-3, "plateau {plateau}");
        let s = mechanical_psd(0.01, &p).unwrap();
        assert!(rel(s, 3.49e-20) < 0.01, "S_x(0.01) = {s}");
        // 1 Hz: plateau term dominates, S ≈ 2.25×10⁻²⁴.
        let s = mechanical_psd(1.0, &p).unwrap();
        assert!(rel(s, 2.25e-24) < 0.01, "S_x(1) = {s}");
        // 1 kHz: flicker term dominates, S ≈ a₃²/f = 3.6×10⁻⁴⁰.
        let s = mechanical_psd(1000.0, &p).unwrap();
        assert!(rel(s, 3.6e-40) < 0.01, "S_x(1000) = {s}");
    }

    #[test]
    fn mechanical_psd_log_space_matches_direct_in_safe_range() {
        let p = MechanicalNoiseParams::default();
        for &f in &[0.05f64, 0.3, 0.65, 1.0, 2.0, 10.0] {
            let direct = p.a1 * p.a1 * f.powi(-5)
                + p.a2 * p.a2 / (p.f0.powi(20) + f.powi(20))
                + p.a3 * p.a3 / f;
            assert!(rel(mechanical_psd(f, &p).unwrap(), direct) < 1e-12, "f = {f}");
        }
    }

    #[test]
    fn mechanical_psd_strictly_decreasing() {
        let p = MechanicalNoiseParams::default();
        let n = 2000;
        let mut prev = f64::INFINITY;
        for i in 0..n {
            let f = 1e-3 * (1e6f64).powf(i as f64 / (n - 1) as f64);
            let s = mechanical_psd(f, &p).unwrap();
            assert!(s < prev, "S_x not strictly decreasing at f = {f}");
            prev = s;
        }
    }

    #[test]
    fn mechanical_heating_reference_point() {
        let m = RigidBody::reference_sphere().mass();
        let omega0 = 2.0 * std::f64::consts::PI;
        let s_x = mechanical_psd(1.0, &MechanicalNoiseParams::default()).unwrap();
        let g = mechanical_heating(m, omega0, s_x).unwrap();
        assert!(rel(g, 1.1e-36) < 0.03, "Gamma_x = {g}");
        // Identity with the general transfer.
        let general = heating_rate_general(m, m * omega0 * omega0, s_x).unwrap();
        assert_eq!(g, general);
        assert_eq!(mechanical_heating(m, omega0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn electric_psd_reference_points() {
        let trap = TrapGeometry::default();
        let p = ElectricNoiseParams::default();
        let s = electric_psd(7.07, &trap, &p).unwrap();
        assert!(rel(s, 3.4e-11) < 0.01, "S_E = {s}");
        // Exact 1/f: S_E·ω independent of ω.
        let s1 = electric_psd(1.0, &trap, &p).unwrap();
        let s2 = electric_psd(512.0, &trap, &p).unwrap();
        assert!(rel(s1 * 1.0, s2 * 512.0) < 1e-14);
        // Small traps are patch-dominated: at d = 1 mm the d⁻⁴ term wins.
        let small = trap.with_d(1e-3).unwrap();
        let d2 = small.d * small.d;
        let tech = (p.b1 + p.b2 * small.v_q * small.v_q) / d2;
        let patch = p.b3 / (d2 * d2);
        assert!(rel(patch, 2.6e-7) < 1e-12);
        assert!(rel(tech, 2.14e-8) < 1e-12);
        assert!(patch > tech);
    }

    #[test]
    fn electric_heating_reference_point() {
        let m = RigidBody::reference_sphere().mass();
        let g = electric_heating(ELEMENTARY_CHARGE, m, 3.4e-11).unwrap();
        assert!(rel(g, 1.7e-34) < 0.01, "Gamma_E = {g}");
        assert!(g < 1.57e-33, "electric heating should sit below the collapse rate");
        assert_eq!(electric_heating(0.0, m, 3.4e-11).unwrap(), 0.0);
        let g2 = electric_heating(2.0 * ELEMENTARY_CHARGE, m, 3.4e-11).unwrap();
        assert!(rel(g2, 4.0 * g) < 1e-14);
    }

    #[test]
    fn trap_frequency_reference_point() {
        let body = RigidBody::reference_sphere();
        let trap = TrapGeometry::default();
        let w0 = trap_frequency(body.charge, &trap, body.mass()).unwrap();
        assert!(rel(w0, 7.088_366_695) < 1e-9, "omega0 = {w0}");
        let f = w0 / (2.0 * std::f64::consts::PI);
        assert!((0.8..1.3).contains(&f), "f = {f} Hz");
        // Exact scalings.
        let w_half = trap_frequency(body.charge, &trap.with_d(0.02).unwrap(), body.mass()).unwrap();
        assert!(rel(w_half, w0 / 2.0) < 1e-14);
        let quad_vq = TrapGeometry { v_q: 80.0, ..trap };
        let w_double = trap_frequency(body.charge, &quad_vq, body.mass()).unwrap();
        assert!(rel(w_double, 2.0 * w0) < 1e-14);
        assert!(trap_frequency(0.0, &trap, body.mass()).is_err());
    }

    #[test]
    fn magnetic_threshold() {
        use crate::constants::BOHR_MAGNETON;
        let m = RigidBody::reference_sphere().mass();
        let trap = TrapGeometry::default();
        let mu = 1e7 * BOHR_MAGNETON;
        let g = magnetic_heating(mu, &trap, m, 1e-19).unwrap();
        // ≈ Υ at the canonical point — the threshold moment.
        let ratio = g / 1.567e-33;
        assert!((0.5..2.0).contains(&ratio), "Gamma_B/Upsilon = {ratio}");
        assert_eq!(magnetic_heating(0.0, &trap, m, 1e-19).unwrap(), 0.0);
        let g10 = magnetic_heating(10.0 * mu, &trap, m, 1e-19).unwrap();
        assert!(rel(g10, 100.0 * g) < 1e-14);
    }

    #[test]
    fn induced_dipole_negligible() {
        let body = RigidBody::reference_sphere();
        let trap = TrapGeometry::default();
        let g = induced_dipole_heating(&body, &trap, 1e-19).unwrap();
        // Order 10⁻⁶⁴ W: within two decades of the ~10⁻⁶⁵ scale, far below 10⁻⁵⁰.
        assert!(g > 1e-66 && g < 1e-62, "induced-dipole rate {g}");
        assert!(g < 1e-50);
        let no_drive = TrapGeometry { v_ac: 0.0, ..trap };
        assert_eq!(induced_dipole_heating(&body, &no_drive, 1e-19).unwrap(), 0.0);
        let cube = RigidBody::new(
            crate::body::Shape::Cube { half_side: 1e-6 },
            1000.0,
            0.0,
            0.0,
        )
        .unwrap();
        assert!(matches!(
            induced_dipole_heating(&cube, &trap, 1e-19),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn mathieu_q_reference_point() {
        let body = RigidBody::reference_sphere();
        let trap = TrapGeometry::default();
        let qm = mathieu_q(body.charge, &trap, body.mass()).unwrap();
        assert!((0.15..0.25).contains(&qm), "q_M = {qm}");
        let no_drive = TrapGeometry { v_ac: 0.0, ..trap };
        assert_eq!(mathieu_q(body.charge, &no_drive, body.mass()).unwrap(), 0.0);
        let degenerate = TrapGeometry { omega_ac: 0.0, ..trap };
        assert!(mathieu_q(body.charge, &degenerate, body.mass()).is_err());
    }

    proptest! {
        #[test]
        fn heating_non_negative(
            m in 1e-20f64..1.0,
            grad in -1e3f64..1e3,
            s in 0.0f64..1e-6,
        ) {
            prop_assert!(heating_rate_general(m, grad, s).unwrap() >= 0.0);
        }

        #[test]
        fn electric_psd_exact_one_over_f(omega in 1e-3f64..1e6) {
            let trap = TrapGeometry::default();
            let p = ElectricNoiseParams::default();
            let s = electric_psd(omega, &trap, &p).unwrap();
            let s1 = electric_psd(1.0, &trap, &p).unwrap();
            prop_assert!(rel(s * omega, s1) < 1e-12);
        }

        #[test]
        fn trap_frequency_inverse_d(d in 1e-4f64..1.0) {
            let body = RigidBody::reference_sphere();
            let trap = TrapGeometry::default().with_d(d).unwrap();
            let w = trap_frequency(body.charge, &trap, body.mass()).unwrap();
            prop_assert!(rel(w * d, 0.070_883_666_95) < 1e-9);
        }
    }
}
