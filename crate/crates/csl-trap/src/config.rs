//! Line-oriented `key = value` run configuration.
//!
//! The parameter space is flat and small, so the format is deliberately plain:
//! one `key = value` per line, `#` starts a comment, dotted keys group related
//! parameters (`trap.d = 0.01`), SI units throughout. Every key has a default
//! — the reference scenario of a singly-charged 0.238 µm osmium sphere in a
//! 1 cm trap holding 300 K helium at 10⁻¹³ Pa with canonical collapse
//! parameters — so the empty file is a complete, valid configuration.
//!
//! Diagnostics name the offending key and line; unknown keys and malformed or
//! out-of-range values are errors, never silently ignored. A repeated key
//! keeps its last assignment (override semantics).

use std::collections::HashMap;

use crate::body::{RigidBody, Shape};
use crate::csl::CslParameters;
use crate::error::{Error, Result};
use crate::feasibility::{DetectionModel, MapSpec, NoiseParams, TrapSizeRule};
use crate::gas::GasEnvironment;
use crate::grid::log_spaced;
use crate::noise::{
    ElectricNoiseParams, MagneticNoiseParams, MechanicalNoiseParams, TrapGeometry,
};
use crate::oracle::SimulationConfig;

/// Trap-size sweep bounds (the heating-versus-size table).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub d_min: f64,
    pub d_max: f64,
    pub points: usize,
}

/// Monte-Carlo verification scenario: a clean benchmark oscillator (not the
/// trapped body — formula checks are scale-free) plus the noise levels and the
/// statistics-friendly collision pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub sim: SimulationConfig,
    /// Benchmark oscillator mass, kg.
    pub oscillator_mass: f64,
    /// Benchmark secular frequency, rad/s.
    pub omega0: f64,
    /// Flat force PSD of the white-noise check, N²/Hz.
    pub force_psd: f64,
    /// Flat positional PSD of the position-noise check, m²/Hz.
    pub position_psd: f64,
    /// Pressure for the collision check (scaled up for statistics), Pa.
    pub collision_pressure: f64,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub body: RigidBody,
    pub trap: TrapGeometry,
    pub csl: CslParameters,
    pub gas: GasEnvironment,
    pub noise: NoiseParams,
    pub detection: DetectionModel,
    pub map: MapSpec,
    pub sweep: SweepConfig,
    pub oracle: OracleConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        parse_config("").expect("the built-in defaults form a valid configuration")
    }
}

struct Raw {
    entries: HashMap<String, (usize, String)>,
}

impl Raw {
    fn parse(text: &str) -> Result<Raw> {
        let mut entries = HashMap::new();
        for (i, full_line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match full_line.find('#') {
                Some(pos) => &full_line[..pos],
                None => full_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(Error::ConfigLine {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = line[..eq].trim();
            let value = line[eq + 1..].trim();
            if key.is_empty() {
                return Err(Error::ConfigLine {
                    line: line_no,
                    message: "missing key before `=`".into(),
                });
            }
            if value.is_empty() {
                return Err(Error::ConfigLine {
                    line: line_no,
                    message: format!("missing value for `{key}`"),
                });
            }
            entries.insert(key.to_string(), (line_no, value.to_string()));
        }
        Ok(Raw { entries })
    }

    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }

    fn take_f64(&mut self, key: &str, default: f64) -> Result<(Option<usize>, f64)> {
        match self.take(key) {
            None => Ok((None, default)),
            Some((line, v)) => match v.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok((Some(line), x)),
                _ => Err(Error::ConfigLine {
                    line,
                    message: format!("invalid number for `{key}`: `{v}`"),
                }),
            },
        }
    }

    fn take_usize(&mut self, key: &str, default: usize) -> Result<(Option<usize>, usize)> {
        match self.take(key) {
            None => Ok((None, default)),
            Some((line, v)) => v.parse::<usize>().map(|x| (Some(line), x)).map_err(|_| {
                Error::ConfigLine {
                    line,
                    message: format!("invalid count for `{key}`: `{v}`"),
                }
            }),
        }
    }

    fn take_u64(&mut self, key: &str, default: u64) -> Result<(Option<usize>, u64)> {
        match self.take(key) {
            None => Ok((None, default)),
            Some((line, v)) => v.parse::<u64>().map(|x| (Some(line), x)).map_err(|_| {
                Error::ConfigLine {
                    line,
                    message: format!("invalid integer for `{key}`: `{v}`"),
                }
            }),
        }
    }

    fn take_f64_list(&mut self, key: &str, default: &[f64]) -> Result<(Option<usize>, Vec<f64>)> {
        match self.take(key) {
            None => Ok((None, default.to_vec())),
            Some((line, v)) => {
                let mut out = Vec::new();
                for part in v.split(',') {
                    let part = part.trim();
                    match part.parse::<f64>() {
                        Ok(x) if x.is_finite() => out.push(x),
                        _ => {
                            return Err(Error::ConfigLine {
                                line,
                                message: format!(
                                    "invalid number `{part}` in list for `{key}`: `{v}`"
                                ),
                            })
                        }
                    }
                }
                Ok((Some(line), out))
            }
        }
    }

    /// Everything not consumed by a known key is an error.
    fn finish(self) -> Result<()> {
        match self.entries.into_iter().min_by_key(|(_, (line, _))| *line) {
            None => Ok(()),
            Some((key, (line, _))) => Err(Error::ConfigLine {
                line,
                message: format!("unknown key `{key}`"),
            }),
        }
    }
}

fn fail(line: Option<usize>, message: String) -> Error {
    match line {
        Some(line) => Error::ConfigLine { line, message },
        None => Error::Config(message),
    }
}

fn require(cond: bool, line: Option<usize>, message: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(line, message()))
    }
}

fn positive(pair: (Option<usize>, f64), key: &str) -> Result<f64> {
    let (line, x) = pair;
    require(x > 0.0, line, || format!("`{key}` must be positive, got {x}"))?;
    Ok(x)
}

fn non_negative(pair: (Option<usize>, f64), key: &str) -> Result<f64> {
    let (line, x) = pair;
    require(x >= 0.0, line, || format!("`{key}` must be non-negative, got {x}"))?;
    Ok(x)
}

fn increasing_positive(pair: &(Option<usize>, Vec<f64>), key: &str) -> Result<()> {
    let (line, values) = pair;
    require(!values.is_empty(), *line, || format!("`{key}` must not be empty"))?;
    require(values.iter().all(|v| *v > 0.0), *line, || {
        format!("`{key}` must be positive throughout")
    })?;
    require(values.windows(2).all(|w| w[1] > w[0]), *line, || {
        format!("`{key}` must be strictly increasing")
    })?;
    Ok(())
}

/// Parse a configuration file's text into a validated [`RunConfig`].
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut raw = Raw::parse(text)?;

    // Body.
    let shape_kind = match raw.take("body.shape") {
        None => None,
        Some((line, v)) => match v.as_str() {
            "sphere" | "cube" => Some((line, v)),
            _ => {
                return Err(Error::ConfigLine {
                    line,
                    message: format!("`body.shape` must be `sphere` or `cube`, got `{v}`"),
                })
            }
        },
    };
    let l = positive(raw.take_f64("body.L", 2.38e-7)?, "body.L")?;
    let density = positive(raw.take_f64("body.density", crate::constants::OSMIUM_DENSITY)?, "body.density")?;
    let charge = non_negative(
        raw.take_f64("body.charge", crate::constants::ELEMENTARY_CHARGE)?,
        "body.charge",
    )?;
    let mu = non_negative(raw.take_f64("body.mu", 0.0)?, "body.mu")?;
    let shape = match shape_kind.as_ref().map(|(_, v)| v.as_str()) {
        Some("cube") => Shape::Cube { half_side: l },
        _ => Shape::Sphere { radius: l },
    };
    let body = RigidBody::new(shape, density, charge, mu)
        .map_err(|e| Error::Config(format!("invalid body: {e}")))?;

    // Trap.
    let trap = TrapGeometry::new(
        positive(raw.take_f64("trap.d", 0.01)?, "trap.d")?,
        positive(raw.take_f64("trap.V_Q", 20.0)?, "trap.V_Q")?,
        non_negative(raw.take_f64("trap.V_AC", 300.0)?, "trap.V_AC")?,
        non_negative(
            raw.take_f64("trap.Omega_AC", 20.0 * std::f64::consts::PI)?,
            "trap.Omega_AC",
        )?,
        positive(raw.take_f64("trap.kappa", 2.0)?, "trap.kappa")?,
    )
    .map_err(|e| Error::Config(format!("invalid trap: {e}")))?;

    // Collapse parameters.
    let csl = CslParameters::new(
        positive(raw.take_f64("csl.lambda", 1e-16)?, "csl.lambda")?,
        positive(raw.take_f64("csl.r_c", 1e-7)?, "csl.r_c")?,
    )
    .map_err(|e| Error::Config(format!("invalid collapse parameters: {e}")))?;

    // Gas.
    let gas = GasEnvironment::new(
        non_negative(raw.take_f64("gas.pressure", 1e-13)?, "gas.pressure")?,
        positive(raw.take_f64("gas.temperature", 300.0)?, "gas.temperature")?,
        positive(
            raw.take_f64("gas.particle_mass", crate::constants::HELIUM_MASS)?,
            "gas.particle_mass",
        )?,
    )
    .map_err(|e| Error::Config(format!("invalid gas environment: {e}")))?;

    // Noise coefficients.
    let noise = NoiseParams {
        mechanical: MechanicalNoiseParams {
            a1: non_negative(raw.take_f64("noise.a1", 1.5e-15)?, "noise.a1")?,
            a2: non_negative(raw.take_f64("noise.a2", 1.5e-12)?, "noise.a2")?,
            a3: non_negative(raw.take_f64("noise.a3", 6e-19)?, "noise.a3")?,
            f0: positive(raw.take_f64("noise.f0", 0.65)?, "noise.f0")?,
        },
        electric: ElectricNoiseParams {
            b1: non_negative(raw.take_f64("noise.b1", 1.7e-14)?, "noise.b1")?,
            b2: non_negative(raw.take_f64("noise.b2", 1.1e-17)?, "noise.b2")?,
            b3: non_negative(raw.take_f64("noise.b3", 2.6e-19)?, "noise.b3")?,
        },
        magnetic: MagneticNoiseParams {
            s_b: non_negative(raw.take_f64("noise.S_B", 1e-19)?, "noise.S_B")?,
        },
    };

    // Detection.
    let nbar = raw.take_f64("detect.nbar", 500.0)?;
    require(nbar.1 >= 1.0, nbar.0, || {
        format!("`detect.nbar` must be at least 1, got {}", nbar.1)
    })?;
    let detection = DetectionModel::new(nbar.1)
        .map_err(|e| Error::Config(format!("invalid detection model: {e}")))?;

    // Map grid.
    let r_c_min = positive(raw.take_f64("map.r_c_min", 1e-9)?, "map.r_c_min")?;
    let r_c_max_pair = raw.take_f64("map.r_c_max", 1e-4)?;
    let r_c_max = positive(r_c_max_pair, "map.r_c_max")?;
    require(r_c_max > r_c_min, r_c_max_pair.0, || {
        format!("`map.r_c_max` ({r_c_max}) must exceed `map.r_c_min` ({r_c_min})")
    })?;
    let r_c_points_pair = raw.take_usize("map.r_c_points", 121)?;
    require(r_c_points_pair.1 >= 2, r_c_points_pair.0, || {
        format!("`map.r_c_points` must be at least 2, got {}", r_c_points_pair.1)
    })?;
    let l_values = raw.take_f64_list("map.L_values", &[1e-7, 1e-6, 1e-5, 1e-4])?;
    increasing_positive(&l_values, "map.L_values")?;
    let pressures = raw.take_f64_list("map.pressures", &[1e-14, 1e-12])?;
    increasing_positive(&pressures, "map.pressures")?;
    let f_floor = positive(raw.take_f64("map.f_floor", 0.01)?, "map.f_floor")?;
    let trap_size_rule = match raw.take("map.trap_rule") {
        None => TrapSizeRule::FrequencyFloor { f_min: f_floor },
        Some((line, v)) => match v.as_str() {
            "floor" => TrapSizeRule::FrequencyFloor { f_min: f_floor },
            "fixed" => TrapSizeRule::Fixed,
            _ => {
                return Err(Error::ConfigLine {
                    line,
                    message: format!("`map.trap_rule` must be `floor` or `fixed`, got `{v}`"),
                })
            }
        },
    };
    let map = MapSpec {
        r_c_grid: log_spaced(r_c_min, r_c_max, r_c_points_pair.1)
            .map_err(|e| Error::Config(format!("invalid map r_c grid: {e}")))?,
        l_values: l_values.1,
        pressures: pressures.1,
        body_template: body,
        trap_template: trap,
        noise,
        env_template: gas,
        trap_size_rule,
    };

    // Size sweep.
    let d_min = positive(raw.take_f64("sweep.d_min", 1e-4)?, "sweep.d_min")?;
    let d_max_pair = raw.take_f64("sweep.d_max", 1.0)?;
    let d_max = positive(d_max_pair, "sweep.d_max")?;
    require(d_max > d_min, d_max_pair.0, || {
        format!("`sweep.d_max` ({d_max}) must exceed `sweep.d_min` ({d_min})")
    })?;
    let sweep_points = raw.take_usize("sweep.points", 200)?;
    require(sweep_points.1 >= 2, sweep_points.0, || {
        format!("`sweep.points` must be at least 2, got {}", sweep_points.1)
    })?;
    let sweep = SweepConfig { d_min, d_max, points: sweep_points.1 };

    // Monte-Carlo verification.
    let ensemble = raw.take_usize("sim.ensemble", 200)?;
    require(ensemble.1 >= 1, ensemble.0, || "`sim.ensemble` must be at least 1".into())?;
    let sim = SimulationConfig {
        dt: positive(raw.take_f64("sim.dt", 0.01)?, "sim.dt")?,
        duration: positive(raw.take_f64("sim.duration", 100.0)?, "sim.duration")?,
        ensemble_size: ensemble.1,
        master_seed: raw.take_u64("sim.seed", 1)?.1,
        initial_energy: non_negative(raw.take_f64("sim.initial_energy", 0.0)?, "sim.initial_energy")?,
    };
    let oracle = OracleConfig {
        sim,
        oscillator_mass: positive(
            raw.take_f64("sim.oscillator_mass", 1e-15)?,
            "sim.oscillator_mass",
        )?,
        omega0: positive(
            raw.take_f64("sim.omega0", std::f64::consts::TAU)?,
            "sim.omega0",
        )?,
        force_psd: non_negative(raw.take_f64("sim.force_psd", 1e-40)?, "sim.force_psd")?,
        position_psd: non_negative(raw.take_f64("sim.position_psd", 1e-22)?, "sim.position_psd")?,
        collision_pressure: non_negative(
            raw.take_f64("sim.collision_pressure", 1e-10)?,
            "sim.collision_pressure",
        )?,
    };

    raw.finish()?;
    Ok(RunConfig { body, trap, csl, gas, noise, detection, map, sweep, oracle })
}
