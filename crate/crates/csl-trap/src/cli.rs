//! Command-line dispatch: parse arguments, load a configuration, run one
//! analysis, emit one table.
//!
//! This is the only part of the crate with side effects. Data goes to
//! `--out PATH` or stdout; diagnostics go to stderr, never mixed with data.
//! Exit codes: 0 success, 1 configuration/usage error, 2 numerical/domain
//! error.
//!
//! Outputs are byte-deterministic for a fixed (config, seed): the stochastic
//! commands split their master seed per trajectory and reduce in index order,
//! so `--threads 1` and `--threads 8` produce identical files.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::body::Shape;
use crate::config::{parse_config, RunConfig};
use crate::csl::{energy_raising_rate, watts_to_nanokelvin_per_minute};
use crate::error::{Error, Result};
use crate::feasibility::{
    detectability_map, detection_energy, detection_time, heating_budget, heating_vs_size_sweep,
    scenario_mathieu_q,
};
use crate::gas::{collision_rate, cross_section, max_pressure, mean_speed};
use crate::grid::log_spaced;
use crate::noise::trap_frequency;
use crate::oracle::{simulate_collision_kicks, verify_heating_formula, verify_positional_noise,
                    NoiseSpec};
use crate::shape_factor::{chi, ShapeKind};
use crate::table::{OutputTable, Provenance};

pub const USAGE: &str = "\
usage: csltrap <command> [flags]

commands:
  chi      shape-factor curves chi(x) for sphere and cube, 200 points in x = L/r_c
  err      collapse-noise energy-raising rate for the configured body
  budget   all heating channels of the configured scenario at its trap frequency
  sweep    mechanical/electric heating vs trap size (log-spaced d grid)
  map      smallest detectable collapse rate over the (r_c, L, pressure) grid
  bound    background-pressure bound and collision statistics
  detect   energy resolution and expected detection time
  oracle   Monte-Carlo verification of the heating formulas

flags:
  --config PATH    key = value configuration file (default: built-in reference scenario)
  --out PATH       write the table to PATH (default: stdout)
  --format FMT     csv | json (default: csv)
  --seed N         master seed override for stochastic commands
  --threads N      worker threads (default: automatic)
  --help, -h       this text
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Chi,
    Err,
    Budget,
    Sweep,
    Map,
    Bound,
    Detect,
    Oracle,
}

impl Command {
    fn from_name(name: &str) -> Option<Command> {
        Some(match name {
            "chi" => Command::Chi,
            "err" => Command::Err,
            "budget" => Command::Budget,
            "sweep" => Command::Sweep,
            "map" => Command::Map,
            "bound" => Command::Bound,
            "detect" => Command::Detect,
            "oracle" => Command::Oracle,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliOptions {
    pub command: Command,
    pub config_path: Option<PathBuf>,
    pub out_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Invocation {
    Help,
    Run(CliOptions),
}

/// Parse an argument vector (without the program name).
pub fn parse_args<S: AsRef<str>>(argv: &[S]) -> Result<Invocation> {
    let mut command = None;
    let mut config_path = None;
    let mut out_path = None;
    let mut format = OutputFormat::Csv;
    let mut seed = None;
    let mut threads = None;

    let mut iter = argv.iter().map(|s| s.as_ref());
    while let Some(arg) = iter.next() {
        let mut value = |flag: &str| {
            iter.next()
                .map(str::to_string)
                .ok_or_else(|| Error::Config(format!("flag `{flag}` expects a value")))
        };
        match arg {
            "--help" | "-h" | "help" => return Ok(Invocation::Help),
            "--config" => config_path = Some(PathBuf::from(value("--config")?)),
            "--out" => out_path = Some(PathBuf::from(value("--out")?)),
            "--format" => {
                let v = value("--format")?;
                format = match v.as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => {
                        return Err(Error::Config(format!(
                            "`--format` must be `csv` or `json`, got `{v}`"
                        )))
                    }
                };
            }
            "--seed" => {
                let v = value("--seed")?;
                seed = Some(v.parse::<u64>().map_err(|_| {
                    Error::Config(format!("`--seed` expects a non-negative integer, got `{v}`"))
                })?);
            }
            "--threads" => {
                let v = value("--threads")?;
                threads = Some(v.parse::<usize>().map_err(|_| {
                    Error::Config(format!("`--threads` expects a positive integer, got `{v}`"))
                })?);
            }
            _ if arg.starts_with('-') => {
                return Err(Error::Config(format!("unknown flag `{arg}`")))
            }
            name => {
                if command.is_some() {
                    return Err(Error::Config(format!("unexpected extra argument `{name}`")));
                }
                command = Some(Command::from_name(name).ok_or_else(|| {
                    Error::Config(format!("unknown command `{name}`; see --help"))
                })?);
            }
        }
    }

    let command = command.ok_or_else(|| Error::Config("missing command; see --help".into()))?;
    Ok(Invocation::Run(CliOptions { command, config_path, out_path, format, seed, threads }))
}

/// Full CLI entry point: parse, run, report. Returns the process exit code.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> i32 {
    match try_run(argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_run<S: AsRef<str>>(argv: &[S]) -> Result<i32> {
    let options = match parse_args(argv)? {
        Invocation::Help => {
            println!("{USAGE}");
            return Ok(0);
        }
        Invocation::Run(options) => options,
    };

    let config_text = match &options.config_path {
        Some(path) => std::fs::read_to_string(path)?,
        None => String::new(),
    };
    let mut config = parse_config(&config_text)?;
    if let Some(seed) = options.seed {
        config.oracle.sim.master_seed = seed;
    }

    let table = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot build a {n}-thread pool: {e}")))?
            .install(|| build_table(options.command, &config, &config_text, options.seed)),
        None => build_table(options.command, &config, &config_text, options.seed),
    }?;

    emit(&table, options.format, options.out_path.as_deref())?;
    Ok(0)
}

fn emit(table: &OutputTable, format: OutputFormat, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            write_table(table, format, &mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_table(table, format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn write_table(table: &OutputTable, format: OutputFormat, w: &mut impl Write) -> Result<()> {
    match format {
        OutputFormat::Csv => table.write_csv(w),
        OutputFormat::Json => table.write_json(w),
    }
}

/// Build the table for one command. Pure given the configuration; the seed
/// flag only annotates provenance (the effective seed already lives in the
/// configuration).
pub fn build_table(
    command: Command,
    config: &RunConfig,
    config_text: &str,
    seed_flag: Option<u64>,
) -> Result<OutputTable> {
    let header_seed = match command {
        Command::Oracle => Some(config.oracle.sim.master_seed),
        _ => seed_flag,
    };
    let provenance = Provenance::new(config_text, header_seed);
    match command {
        Command::Chi => chi_table(provenance),
        Command::Err => err_table(config, provenance),
        Command::Budget => budget_table(config, provenance),
        Command::Sweep => sweep_table(config, provenance),
        Command::Map => map_table(config, provenance),
        Command::Bound => bound_table(config, provenance),
        Command::Detect => detect_table(config, provenance),
        Command::Oracle => oracle_table(config, provenance),
    }
}

/// Both shape-factor curves on 200 log-spaced points over x ∈ [10⁻², 10²].
fn chi_table(provenance: Provenance) -> Result<OutputTable> {
    let xs = log_spaced(1e-2, 1e2, 200)?;
    let mut sphere = Vec::with_capacity(xs.len());
    let mut cube = Vec::with_capacity(xs.len());
    for &x in &xs {
        sphere.push(chi(ShapeKind::Sphere, x)?);
        cube.push(chi(ShapeKind::Cube, x)?);
    }
    let mut t = OutputTable::new(provenance);
    t.push_num("x", "-", xs);
    t.push_num("chi_sphere", "-", sphere);
    t.push_num("chi_cube", "-", cube);
    Ok(t)
}

fn shape_name(shape: &Shape) -> &'static str {
    match shape {
        Shape::Sphere { .. } => "sphere",
        Shape::Cube { .. } => "cube",
    }
}

fn err_table(config: &RunConfig, provenance: Provenance) -> Result<OutputTable> {
    let body = &config.body;
    let csl = &config.csl;
    let x = body.length() / csl.r_c;
    let chi_value = chi(ShapeKind::from(&body.shape), x)?;
    let upsilon = energy_raising_rate(body, csl)?;
    let mut t = OutputTable::new(provenance);
    t.push_text("shape", "-", vec![shape_name(&body.shape).into()]);
    t.push_num("L", "m", vec![body.length()]);
    t.push_num("mass", "kg", vec![body.mass()]);
    t.push_num("lambda", "1/s", vec![csl.lambda]);
    t.push_num("r_c", "m", vec![csl.r_c]);
    t.push_num("x", "-", vec![x]);
    t.push_num("chi", "-", vec![chi_value]);
    t.push_num("upsilon", "W", vec![upsilon]);
    t.push_num(
        "temperature_rate",
        "nK/min",
        vec![watts_to_nanokelvin_per_minute(upsilon)],
    );
    Ok(t)
}

fn budget_table(config: &RunConfig, provenance: Provenance) -> Result<OutputTable> {
    let budget =
        heating_budget(&config.body, &config.trap, &config.gas, &config.noise, &config.csl)?;
    let q_m = scenario_mathieu_q(&config.body, &config.trap)?;
    let total = budget.total_noise();
    let mut t = OutputTable::new(provenance);
    t.push_num("omega0", "rad/s", vec![budget.omega0]);
    t.push_num("f", "Hz", vec![budget.omega0 / std::f64::consts::TAU]);
    t.push_num("mathieu_q", "-", vec![q_m]);
    t.push_num("upsilon", "W", vec![budget.upsilon_csl]);
    t.push_num("gamma_mechanical", "W", vec![budget.gamma_mechanical]);
    t.push_num("gamma_electric", "W", vec![budget.gamma_electric]);
    t.push_num("gamma_magnetic", "W", vec![budget.gamma_magnetic]);
    t.push_num("gamma_induced", "W", vec![budget.gamma_induced]);
    t.push_num("gamma_collision", "W", vec![budget.gamma_collision]);
    t.push_num("total_noise", "W", vec![total]);
    t.push_num("signal_to_noise", "-", vec![budget.upsilon_csl / total]);
    t.push_text("dominant_noise", "-", vec![budget.dominant().label().into()]);
    t.push_text("detectable", "-", vec![budget.detectable().to_string()]);
    Ok(t)
}

fn sweep_table(config: &RunConfig, provenance: Provenance) -> Result<OutputTable> {
    let rows = heating_vs_size_sweep(
        &config.body,
        &config.trap,
        &config.noise,
        &config.csl,
        config.sweep.d_min,
        config.sweep.d_max,
        config.sweep.points,
    )?;
    let mut t = OutputTable::new(provenance);
    t.push_num("d", "m", rows.iter().map(|r| r.d).collect());
    t.push_num("f", "Hz", rows.iter().map(|r| r.f).collect());
    t.push_num("gamma_mechanical", "W", rows.iter().map(|r| r.gamma_mechanical).collect());
    t.push_num("gamma_electric", "W", rows.iter().map(|r| r.gamma_electric).collect());
    t.push_num("upsilon", "W", rows.iter().map(|r| r.upsilon).collect());
    Ok(t)
}

fn map_table(config: &RunConfig, provenance: Provenance) -> Result<OutputTable> {
    let rows = detectability_map(&config.map)?;
    let mut t = OutputTable::new(provenance);
    t.push_num("r_c", "m", rows.iter().map(|r| r.r_c).collect());
    t.push_num("L", "m", rows.iter().map(|r| r.l).collect());
    t.push_num("pressure", "Pa", rows.iter().map(|r| r.pressure).collect());
    t.push_num("lambda_min", "1/s", rows.iter().map(|r| r.lambda_min).collect());
    t.push_text(
        "dominant_noise",
        "-",
        rows.iter().map(|r| r.dominant_noise_source.label().to_string()).collect(),
    );
    t.push_num("omega0", "rad/s", rows.iter().map(|r| r.omega0).collect());
    t.push_num("d_used", "m", rows.iter().map(|r| r.d_used).collect());
    Ok(t)
}

fn bound_table(config: &RunConfig, provenance: Provenance) -> Result<OutputTable> {
    let body = &config.body;
    let env = &config.gas;
    let upsilon = energy_raising_rate(body, &config.csl)?;
    let p_max = max_pressure(upsilon, body, env)?;
    let rate = collision_rate(body, env)?;
    let mut t = OutputTable::new(provenance);
    t.push_num("pressure", "Pa", vec![env.pressure]);
    t.push_num("upsilon", "W", vec![upsilon]);
    t.push_num("p_max", "Pa", vec![p_max]);
    t.push_num("collision_rate", "1/s", vec![rate]);
    t.push_num("collision_interval", "s", vec![1.0 / rate]);
    t.push_num("mean_speed", "m/s", vec![mean_speed(env)]);
    t.push_num("cross_section", "m^2", vec![cross_section(body)?]);
    Ok(t)
}

fn detect_table(config: &RunConfig, provenance: Provenance) -> Result<OutputTable> {
    let body = &config.body;
    let omega0 = trap_frequency(body.charge, &config.trap, body.mass())?;
    let e0 = detection_energy(&config.detection, omega0)?;
    let upsilon = energy_raising_rate(body, &config.csl)?;
    let time = detection_time(e0, upsilon)?;
    let mut t = OutputTable::new(provenance);
    t.push_num("nbar", "-", vec![config.detection.nbar]);
    t.push_num("omega0", "rad/s", vec![omega0]);
    t.push_num("f", "Hz", vec![omega0 / std::f64::consts::TAU]);
    t.push_num("e0", "J", vec![e0]);
    t.push_num(
        "e0_temperature",
        "nK",
        vec![e0 / crate::constants::BOLTZMANN_KB * 1e9],
    );
    t.push_num("upsilon", "W", vec![upsilon]);
    t.push_num("detection_time", "s", vec![time]);
    Ok(t)
}

/// Run all four Monte-Carlo verifications and tabulate them, one row per
/// check. The kick-count columns apply only to the collision row and are NaN
/// (JSON: null) elsewhere.
fn oracle_table(config: &RunConfig, provenance: Provenance) -> Result<OutputTable> {
    let oc = &config.oracle;
    let m = oc.oscillator_mass;
    let omega0 = oc.omega0;

    let white = verify_heating_formula(
        m,
        omega0,
        &NoiseSpec::WhiteForce { s_f: oc.force_psd },
        &oc.sim,
    )?;
    let pink = verify_heating_formula(
        m,
        omega0,
        &NoiseSpec::OneOverF { c: oc.force_psd * omega0 },
        &oc.sim,
    )?;
    let position = verify_positional_noise(
        m,
        omega0,
        &NoiseSpec::WhiteForce { s_f: oc.position_psd },
        &oc.sim,
    )?;
    let env = config.gas.with_pressure(oc.collision_pressure)?;
    let collision = simulate_collision_kicks(&config.body, &env, omega0, &oc.sim)?;

    let mut t = OutputTable::new(provenance);
    t.push_text(
        "check",
        "-",
        vec!["white_force".into(), "one_over_f".into(), "position".into(), "collision".into()],
    );
    t.push_num(
        "analytic",
        "W",
        vec![white.analytic, pink.analytic, position.analytic, collision.analytic],
    );
    t.push_num(
        "simulated",
        "W",
        vec![white.simulated, pink.simulated, position.simulated, collision.simulated],
    );
    t.push_num("ratio", "-", vec![white.ratio, pink.ratio, position.ratio, collision.ratio]);
    t.push_num(
        "slope_stderr",
        "W",
        vec![
            white.slope_stderr,
            pink.slope_stderr,
            position.slope_stderr,
            collision.slope_stderr,
        ],
    );
    t.push_num(
        "kicks_observed",
        "-",
        vec![f64::NAN, f64::NAN, f64::NAN, collision.kicks_observed as f64],
    );
    t.push_num(
        "kicks_expected",
        "-",
        vec![f64::NAN, f64::NAN, f64::NAN, collision.kicks_expected],
    );
    Ok(t)
}
