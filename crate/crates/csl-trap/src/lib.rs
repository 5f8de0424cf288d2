//! Feasibility analysis for detecting spontaneous-collapse (CSL) heating with a
//! charged, rigid body levitated in a Paul trap.
//!
//! Continuous-spontaneous-localisation models add a stochastic collapse process to
//! quantum mechanics, parameterised by a collapse rate `λ` and a correlation length
//! `r_c`. A side effect of the collapse noise is a steady momentum diffusion of any
//! rigid body, and hence a constant *energy-raising rate* Υ of its centre-of-mass
//! motion. A sufficiently cold, well-isolated trapped particle therefore acts as a
//! collapse detector: if the observed heating floor lies below Υ, the parameter
//! point (λ, r_c) is testable.
//!
//! This crate models both sides of that comparison:
//!
//! * [`csl`] / [`shape_factor`] — the collapse heating rate Υ for spheres and cubes,
//!   including the geometry factor χ(L/r_c) and its extrema;
//! * [`noise`] / [`gas`] — environmental heating channels: mechanical vibration,
//!   electric field noise, magnetic noise, rf-induced dipole coupling, and residual
//!   gas collisions, plus Paul-trap plumbing (secular frequency, Mathieu q);
//! * [`feasibility`] — heating budgets, the smallest detectable collapse rate
//!   `λ_min(r_c)`, detectability maps over body size and pressure, and
//!   detection-time estimates;
//! * [`oracle`] — an independent stochastic verification layer: a harmonic
//!   oscillator driven by synthesized noise or Poisson-distributed gas kicks,
//!   integrated symplectically, with the heating slope recovered by least squares
//!   and compared against the analytic formulas;
//! * [`config`] / [`table`] / [`cli`] — a `key = value` run configuration, CSV/JSON
//!   table emission, and the `csltrap` command-line front end.
//!
//! All quantities are strict SI internally; presentation-layer conversions (such as
//! nK/min) happen only at the output boundary. Every simulation is deterministic
//! for a fixed seed, independent of thread count.

pub mod body;
pub mod cli;
pub mod config;
pub mod constants;
pub mod csl;
pub mod error;
pub mod feasibility;
pub mod gas;
pub mod grid;
pub mod noise;
pub mod oracle;
pub mod search;
pub mod shape_factor;
pub mod special;
pub mod table;

pub use body::{RigidBody, Shape};
pub use csl::{energy_raising_rate, CslParameters};
pub use error::{Error, Result};
pub use feasibility::{HeatingBudget, NoiseParams};
pub use noise::TrapGeometry;
