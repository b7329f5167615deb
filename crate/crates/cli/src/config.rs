//! Scenario settings from a flat `key = value` file plus flag overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use triqubit::CouplingConfig;

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    /// A field holds an invalid value.
    Field {
        field: String,
        message: String,
    },
    /// The config file has a line that is not `key = value`.
    Syntax {
        line: usize,
        text: String,
    },
    Io {
        path: PathBuf,
        message: String,
    },
}

impl ConfigError {
    pub fn field(field: &str, message: impl Into<String>) -> Self {
        Self::Field {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Field { field, message } => write!(f, "invalid `{field}`: {message}"),
            Self::Syntax { line, text } => {
                write!(
                    f,
                    "config line {line}: expected `key = value`, got `{text}`"
                )
            }
            Self::Io { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Inhomogeneous,
    Homogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Which measure families are written. Unselected columns hold NaN.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    pub entropy: bool,
    pub concurrence: bool,
    pub probability: bool,
}

impl Default for Measures {
    fn default() -> Self {
        Self {
            entropy: true,
            concurrence: true,
            probability: true,
        }
    }
}

impl FromStr for Measures {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut m = Measures {
            entropy: false,
            concurrence: false,
            probability: false,
        };
        for item in s.split(',').map(str::trim) {
            match item {
                "all" => m = Measures::default(),
                "entropy" | "S" => m.entropy = true,
                "concurrence" | "C" => m.concurrence = true,
                "probability" | "P" => m.probability = true,
                other => {
                    return Err(format!(
                    "unknown measure `{other}` (expected entropy, concurrence, probability or all)"
                ))
                }
            }
        }
        Ok(m)
    }
}

/// Parse `LO:HI`.
pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound `{hi}`"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Every key the config file may set; flags with the same name win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub mode: Option<Mode>,
    pub aa: Option<f64>,
    pub ab: Option<f64>,
    pub j: Option<f64>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub points: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub measures: Option<Measures>,
    pub seed: Option<u64>,
    pub cases: Option<usize>,
    pub window: Option<(f64, f64)>,
    pub n_max: Option<u32>,
    pub c3: Option<f64>,
    pub c3_err: Option<f64>,
    pub r: Option<f64>,
    pub tau: Option<f64>,
}

fn parse_field<T: FromStr>(field: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::field(field, format!("cannot parse `{value}`")))
}

fn parse_enum<T: ValueEnum>(field: &str, value: &str) -> Result<T, ConfigError> {
    T::from_str(value, true)
        .map_err(|_| ConfigError::field(field, format!("unknown value `{value}`")))
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = FileConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: n + 1,
                text: raw.to_string(),
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.replace('-', "_");
        match key.as_str() {
            "mode" => self.mode = Some(parse_enum(&key, value)?),
            "aa" => self.aa = Some(parse_field(&key, value)?),
            "ab" => self.ab = Some(parse_field(&key, value)?),
            "j" => self.j = Some(parse_field(&key, value)?),
            "t_start" => self.t_start = Some(parse_field(&key, value)?),
            "t_end" => self.t_end = Some(parse_field(&key, value)?),
            "points" => self.points = Some(parse_field(&key, value)?),
            "format" => self.format = Some(parse_enum(&key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "measures" => {
                self.measures = Some(value.parse().map_err(|m| ConfigError::field(&key, m))?)
            }
            "seed" => self.seed = Some(parse_field(&key, value)?),
            "cases" => self.cases = Some(parse_field(&key, value)?),
            "window" => {
                self.window = Some(parse_window(value).map_err(|m| ConfigError::field(&key, m))?)
            }
            "n_max" => self.n_max = Some(parse_field(&key, value)?),
            "c3" => self.c3 = Some(parse_field(&key, value)?),
            "c3_err" => self.c3_err = Some(parse_field(&key, value)?),
            "r" => self.r = Some(parse_field(&key, value)?),
            "tau" => self.tau = Some(parse_field(&key, value)?),
            _ => return Err(ConfigError::field(&key, "unknown key")),
        }
        Ok(())
    }
}

/// Coupling choice of a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Engine {
    Inhomogeneous(CouplingConfig),
    Homogeneous { j: f64 },
}

/// Resolved settings for `evolve`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub engine: Engine,
    pub t_start: f64,
    pub t_end: f64,
    pub points: usize,
    pub measures: Measures,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_AA: f64 = 0.5;
pub const DEFAULT_AB: f64 = 0.8;
pub const DEFAULT_J: f64 = 1.0;
pub const DEFAULT_T_START: f64 = 0.0;
pub const DEFAULT_T_END: f64 = 20.0;
pub const DEFAULT_POINTS: usize = 2001;

/// Build the engine from mode and couplings, naming the first bad field.
pub fn resolve_engine(
    mode: Mode,
    aa: Option<f64>,
    ab: Option<f64>,
    j: Option<f64>,
) -> Result<Engine, ConfigError> {
    match mode {
        Mode::Inhomogeneous => {
            let aa = aa.unwrap_or(DEFAULT_AA);
            let ab = ab.unwrap_or(DEFAULT_AB);
            for (name, v) in [("aa", aa), ("ab", ab)] {
                if !(v.is_finite() && v > 0.0) {
                    return Err(ConfigError::field(
                        name,
                        format!("must be positive and finite, got {v}"),
                    ));
                }
            }
            if aa == ab {
                return Err(ConfigError::field(
                    "ab",
                    "must differ from aa in inhomogeneous mode (use --mode homogeneous with j = 2*aa)",
                ));
            }
            let cfg =
                CouplingConfig::new(aa, ab).map_err(|e| ConfigError::field("aa", e.to_string()))?;
            Ok(Engine::Inhomogeneous(cfg))
        }
        Mode::Homogeneous => {
            let j = j.unwrap_or(DEFAULT_J);
            if !(j.is_finite() && j != 0.0) {
                return Err(ConfigError::field(
                    "j",
                    format!("must be finite and nonzero, got {j}"),
                ));
            }
            Ok(Engine::Homogeneous { j })
        }
    }
}

impl ScenarioConfig {
    pub fn new(
        engine: Engine,
        t_start: f64,
        t_end: f64,
        points: usize,
        measures: Measures,
        format: Format,
        out: Option<PathBuf>,
    ) -> Result<Self, ConfigError> {
        if !t_start.is_finite() {
            return Err(ConfigError::field("t_start", "must be finite"));
        }
        if !t_end.is_finite() {
            return Err(ConfigError::field("t_end", "must be finite"));
        }
        if t_start >= t_end {
            return Err(ConfigError::field(
                "t_end",
                format!("must exceed t_start ({t_start}), got {t_end}"),
            ));
        }
        if points < 2 {
            return Err(ConfigError::field(
                "points",
                format!("must be at least 2, got {points}"),
            ));
        }
        Ok(Self {
            engine,
            t_start,
            t_end,
            points,
            measures,
            format,
            out,
        })
    }
}
