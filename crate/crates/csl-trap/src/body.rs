//! Rigid test bodies: shape, material, charge, and magnetic moment.

use crate::constants::OSMIUM_DENSITY;
use crate::error::{ensure_non_negative, ensure_positive, Result};

/// Body geometry. `L` is the characteristic half-size that the geometry factor
/// χ(L/r_c) is parameterised by: the radius of a sphere, or the half-side of a
/// cube (a cube of side 2L).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// Sphere of radius `radius` (m).
    Sphere { radius: f64 },
    /// Cube of side `2 * half_side` (m).
    Cube { half_side: f64 },
}

impl Shape {
    /// The characteristic length L (m): sphere radius or cube half-side.
    pub fn length(&self) -> f64 {
        match *self {
            Shape::Sphere { radius } => radius,
            Shape::Cube { half_side } => half_side,
        }
    }

    /// Volume (m³): (4/3)πL³ for the sphere, (2L)³ = 8L³ for the cube.
    pub fn volume(&self) -> f64 {
        let l = self.length();
        match self {
            Shape::Sphere { .. } => 4.0 / 3.0 * std::f64::consts::PI * l * l * l,
            Shape::Cube { .. } => 8.0 * l * l * l,
        }
    }

    /// Same geometry, rescaled to a new characteristic length (m).
    pub fn with_length(&self, l: f64) -> Shape {
        match self {
            Shape::Sphere { .. } => Shape::Sphere { radius: l },
            Shape::Cube { .. } => Shape::Cube { half_side: l },
        }
    }
}

/// A levitated rigid body: geometry, density, net charge, permanent magnetic
/// moment. Construct through [`RigidBody::new`] so the invariants (L > 0,
/// ρ > 0, µ ≥ 0) hold for every instance handed to the physics operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidBody {
    pub shape: Shape,
    /// Mass density ρ, kg/m³.
    pub density: f64,
    /// Net charge q, C.
    pub charge: f64,
    /// Permanent magnetic moment µ, J/T.
    pub magnetic_moment: f64,
}

impl RigidBody {
    pub fn new(shape: Shape, density: f64, charge: f64, magnetic_moment: f64) -> Result<Self> {
        ensure_positive(shape.length(), "body size L")?;
        ensure_positive(density, "density")?;
        ensure_non_negative(magnetic_moment, "magnetic moment")?;
        if !charge.is_finite() {
            return Err(crate::error::Error::domain("charge must be finite"));
        }
        Ok(RigidBody { shape, density, charge, magnetic_moment })
    }

    /// Osmium sphere of the given radius (m) and charge (C), µ = 0.
    pub fn osmium_sphere(radius: f64, charge: f64) -> Result<Self> {
        RigidBody::new(Shape::Sphere { radius }, OSMIUM_DENSITY, charge, 0.0)
    }

    /// The reference test body: a singly-charged osmium sphere of radius
    /// 0.238 µm (mass ≈ 1.275×10⁻¹⁵ kg ≈ 7.7×10¹¹ u), whose size maximises the
    /// geometry factor at the canonical correlation length r_c = 100 nm.
    pub fn reference_sphere() -> Self {
        RigidBody::osmium_sphere(2.38e-7, crate::constants::ELEMENTARY_CHARGE)
            .expect("reference body parameters are valid")
    }

    /// Mass m = ρ·V (kg).
    pub fn mass(&self) -> f64 {
        self.density * self.shape.volume()
    }

    /// Characteristic length L (m).
    pub fn length(&self) -> f64 {
        self.shape.length()
    }

    /// Same material, charge, and moment with the size L replaced.
    pub fn with_length(&self, l: f64) -> Result<Self> {
        RigidBody::new(self.shape.with_length(l), self.density, self.charge, self.magnetic_moment)
    }
}

/// Mass of a body (kg): (4/3)πL³ρ for spheres, 8L³ρ for cubes.
pub fn body_mass(body: &RigidBody) -> f64 {
    body.mass()
}
