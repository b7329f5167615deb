//! Batch front end: time series, validation runs and special-time reports.
//!
//! Exit statuses: 0 success, 1 usage or configuration error, 2 validation
//! failure.

pub mod config;
pub mod number;
pub mod series;
pub mod special;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use triqubit::analysis::RydbergParams;
use triqubit::validate::{run_validation_with, Engines, ValidationReport};

use config::{
    parse_window, resolve_engine, ConfigError, FileConfig, Format, Mode, ScenarioConfig,
    DEFAULT_POINTS, DEFAULT_T_END, DEFAULT_T_START,
};
use special::{
    SpecialSettings, DEFAULT_C3, DEFAULT_C3_ERR, DEFAULT_N_MAX, DEFAULT_R, DEFAULT_REVIVAL_POINTS,
    DEFAULT_WINDOW,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_CASES: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "triqubit",
    version,
    about = "Entanglement dynamics of three interacting qubits"
)]
pub struct Cli {
    /// Flat `key = value` file; command-line flags override its entries.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a time series of S, C and P for every pair and qubit.
    #[command(allow_negative_numbers = true)]
    Evolve(EvolveArgs),
    /// Run the oracle-equivalence and invariant suites.
    Validate(ValidateArgs),
    /// Report equal-entanglement times or the revival, plus lab units.
    #[command(allow_negative_numbers = true)]
    Special(SpecialArgs),
    /// Convert a dimensionless time to microseconds for Rydberg atoms.
    #[command(allow_negative_numbers = true)]
    Rydberg(RydbergArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct EngineArgs {
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Coupling A_a between qubits a and c.
    #[arg(long)]
    pub aa: Option<f64>,
    /// Coupling A_b between qubits b and c.
    #[arg(long)]
    pub ab: Option<f64>,
    /// Homogeneous coupling J.
    #[arg(long)]
    pub j: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long = "t-start")]
    pub t_start: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Comma list of entropy, concurrence, probability, or all.
    #[arg(long)]
    pub measures: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub cases: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RydbergFlags {
    /// C3 in MHz·μm³.
    #[arg(long)]
    pub c3: Option<f64>,
    /// Uncertainty of C3.
    #[arg(long = "c3-err")]
    pub c3_err: Option<f64>,
    /// Atom separation in μm.
    #[arg(long)]
    pub r: Option<f64>,
    /// Dimensionless time (defaults to the first equal-entanglement time).
    #[arg(long)]
    pub tau: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpecialArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,
    /// Revival search window.
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Revival grid points.
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub rydberg: RydbergFlags,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RydbergArgs {
    #[command(flatten)]
    pub rydberg: RydbergFlags,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Compute(triqubit::Error),
    /// Checks ran but did not pass; the report has been written.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Compute(_) => EXIT_USAGE,
            Self::Failed(_) => EXIT_VALIDATION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config(e) => write!(f, "{e}"),
            Self::Compute(e) => write!(f, "{e}"),
            Self::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

impl From<triqubit::Error> for CliError {
    fn from(e: triqubit::Error) -> Self {
        Self::Compute(e)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            ConfigError::Io {
                path: path.to_path_buf(),
                message: format!("cannot write output: {e}"),
            }
            .into()
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| {
                    ConfigError::Io {
                        path: PathBuf::from("<stdout>"),
                        message: e.to_string(),
                    }
                    .into()
                })
        }
    }
}

fn engine_from(args: &EngineArgs, file: &FileConfig) -> Result<config::Engine, ConfigError> {
    resolve_engine(
        args.mode.or(file.mode).unwrap_or(Mode::Inhomogeneous),
        args.aa.or(file.aa),
        args.ab.or(file.ab),
        args.j.or(file.j),
    )
}

pub fn evolve_config(args: &EvolveArgs, file: &FileConfig) -> Result<ScenarioConfig, ConfigError> {
    let measures = match &args.measures {
        Some(s) => s.parse().map_err(|m| ConfigError::field("measures", m))?,
        None => file.measures.unwrap_or_default(),
    };
    ScenarioConfig::new(
        engine_from(&args.engine, file)?,
        args.t_start.or(file.t_start).unwrap_or(DEFAULT_T_START),
        args.t_end.or(file.t_end).unwrap_or(DEFAULT_T_END),
        args.points.or(file.points).unwrap_or(DEFAULT_POINTS),
        measures,
        args.format.or(file.format).unwrap_or(Format::Csv),
        args.out.clone().or_else(|| file.out.clone()),
    )
}

fn rydberg_from(
    flags: &RydbergFlags,
    file: &FileConfig,
) -> Result<(RydbergParams, f64, Option<f64>), ConfigError> {
    let c3 = flags.c3.or(file.c3).unwrap_or(DEFAULT_C3);
    let r = flags.r.or(file.r).unwrap_or(DEFAULT_R);
    let c3_err = flags.c3_err.or(file.c3_err).unwrap_or(DEFAULT_C3_ERR);
    let tau = flags.tau.or(file.tau);
    if !(c3.is_finite() && c3 > 0.0) {
        return Err(ConfigError::field(
            "c3",
            format!("must be positive, got {c3}"),
        ));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(ConfigError::field(
            "r",
            format!("must be positive, got {r}"),
        ));
    }
    if !(c3_err.is_finite() && (0.0..c3).contains(&c3_err)) {
        return Err(ConfigError::field(
            "c3_err",
            format!("must lie in [0, c3), got {c3_err}"),
        ));
    }
    if let Some(t) = tau {
        if !(t.is_finite() && t >= 0.0) {
            return Err(ConfigError::field(
                "tau",
                format!("must be non-negative, got {t}"),
            ));
        }
    }
    let p = RydbergParams::new(c3, r).map_err(|e| ConfigError::field("c3", e.to_string()))?;
    Ok((p, c3_err, tau))
}

pub fn special_settings(
    args: &SpecialArgs,
    file: &FileConfig,
) -> Result<SpecialSettings, ConfigError> {
    let window = match &args.window {
        Some(s) => parse_window(s).map_err(|m| ConfigError::field("window", m))?,
        None => file.window.unwrap_or(DEFAULT_WINDOW),
    };
    let grid_points = args
        .points
        .or(file.points)
        .unwrap_or(DEFAULT_REVIVAL_POINTS);
    if grid_points < 100 {
        return Err(ConfigError::field(
            "points",
            format!("revival search needs at least 100, got {grid_points}"),
        ));
    }
    let (rydberg, c3_err, tau) = rydberg_from(&args.rydberg, file)?;
    Ok(SpecialSettings {
        engine: engine_from(&args.engine, file)?,
        n_max: args.n_max.or(file.n_max).unwrap_or(DEFAULT_N_MAX),
        window,
        grid_points,
        rydberg,
        c3_err,
        tau,
    })
}

/// Run the validation suites and write the report. Fails with exit status 2
/// when any check misses its tolerance.
pub fn validate_command(
    seed: u64,
    cases: usize,
    engines: &Engines,
    out: Option<&Path>,
) -> Result<ValidationReport, CliError> {
    if cases < 1 {
        return Err(ConfigError::field("cases", "must be at least 1").into());
    }
    let report = run_validation_with(seed, cases, engines);
    emit(out, &report.render())?;
    if report.passed() {
        Ok(report)
    } else {
        let failing: Vec<String> = report
            .failures()
            .iter()
            .map(|c| format!("{} / {} (worst case: {})", c.suite, c.name, c.worst_case))
            .collect();
        Err(CliError::Failed(format!(
            "validation failed: {}",
            failing.join("; ")
        )))
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Evolve(args) => {
            let cfg = evolve_config(&args, &file)?;
            let rows = series::compute(&cfg)?;
            emit(cfg.out.as_deref(), &series::render(&rows, cfg.format))
        }
        Command::Validate(args) => {
            let out = args.out.or_else(|| file.out.clone());
            validate_command(
                args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
                args.cases.or(file.cases).unwrap_or(DEFAULT_CASES),
                &Engines::default(),
                out.as_deref(),
            )
            .map(|_| ())
        }
        Command::Special(args) => {
            let settings = special_settings(&args, &file)?;
            let report = special::run_special(&settings)?;
            emit(
                args.out.or_else(|| file.out.clone()).as_deref(),
                &report.to_json(),
            )?;
            if report.verified() {
                Ok(())
            } else {
                Err(CliError::Failed(
                    "an equal-entanglement time failed verification".into(),
                ))
            }
        }
        Command::Rydberg(args) => {
            let (p, c3_err, tau) = rydberg_from(&args.rydberg, &file)?;
            let tau = tau.unwrap_or_else(triqubit::analysis::first_equal_time);
            let section = special::rydberg_section(&p, c3_err, tau)?;
            let mut text = serde_json::to_string_pretty(&section).expect("plain data serializes");
            text.push('\n');
            emit(args.out.or_else(|| file.out.clone()).as_deref(), &text)
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
