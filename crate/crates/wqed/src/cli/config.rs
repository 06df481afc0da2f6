//! Flat `key = value` config files (one pair per line, `#` comments).
//!
//! Frequencies are given in Hz-style units (`omega_q_ghz = 5.0` means
//! Ω/2π = 5 GHz) and converted to angular units once, here. Missing fields
//! take the standard microwave-qubit defaults: Ω/2π = 5 GHz,
//! Γ/2π = 0.01 GHz, v_g = 3e8 m/s, Δ/2π = 1 MHz.

use crate::dynamics::PulseSpec;
use crate::field::Direction;
use crate::stationary::{DriveSpec, SystemParams};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

/// Errors from the config layer; mapped to exit code 2.
#[derive(Debug)]
pub enum ConfigError {
    Io(String),
    Parse { line: usize, msg: String },
    Validation(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(msg) => write!(f, "config io error: {msg}"),
            ConfigError::Parse { line, msg } => {
                write!(f, "config parse error at line {line}: {msg}")
            }
            ConfigError::Validation(msg) => write!(f, "config validation error: {msg}"),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A uniform 1D grid request.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self, ConfigError> {
        if steps < 2 {
            return Err(ConfigError::Validation(format!(
                "grid needs steps >= 2 (got {steps})"
            )));
        }
        if !(min < max) {
            return Err(ConfigError::Validation(format!(
                "grid needs min < max (got {min}..{max})"
            )));
        }
        Ok(Self { min, max, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.min + h * k as f64).collect()
    }
}

/// Fully resolved run scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub params: SystemParams,
    pub pulse: PulseSpec,
    pub drive: DriveSpec,
    pub direction: Direction,
    /// Fixed observation distance (m) for the AFC command.
    pub x_fixed: f64,
    /// Fixed map time (s) for the 2D map command.
    pub t_fixed: f64,
    /// Time-series observation point (m, signed) and start time (s).
    pub x0: f64,
    pub t0: f64,
    /// Optional explicit grids; commands fill in their defaults.
    pub x_grid: Option<GridSpec>,
    pub t_grid: Option<GridSpec>,
    pub freq_grid: Option<GridSpec>,
    /// Time-series extent in beat periods and samples per carrier period.
    pub periods: f64,
    pub samples_per_carrier: f64,
    pub threads: usize,
}

impl Scenario {
    /// Carrier wavelength of the qubit transition.
    pub fn wavelength(&self) -> f64 {
        self.params.wavelength()
    }
}

fn ghz(v: f64) -> f64 {
    2.0 * PI * 1e9 * v
}

fn mhz(v: f64) -> f64 {
    2.0 * PI * 1e6 * v
}

const KNOWN_KEYS: &[&str] = &[
    "omega_q_ghz",
    "gamma_rad_ghz",
    "gamma_phi_ghz",
    "gamma_loss_ghz",
    "v_g_m_per_s",
    "delta_mhz",
    "length_m",
    "omega_s_ghz",
    "omega_s_offset_gamma",
    "rabi_mhz",
    "direction",
    "x_mm",
    "t_ns",
    "x0_mm",
    "t0_ps",
    "x_min_mm",
    "x_max_mm",
    "x_steps",
    "t_min_ns",
    "t_max_ns",
    "t_steps",
    "freq_min_over_omega",
    "freq_max_over_omega",
    "freq_steps",
    "periods",
    "samples_per_carrier",
    "threads",
];

/// Parse a config file into a validated [`Scenario`].
pub fn parse_config(path: &Path) -> Result<Scenario, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    parse_config_str(&text)
}

/// Parse config text (the file body) into a validated [`Scenario`].
pub fn parse_config_str(text: &str) -> Result<Scenario, ConfigError> {
    let mut kv: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::Parse {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = k.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::Parse {
                line: line_no,
                msg: format!("unknown key `{key}`"),
            });
        }
        if kv
            .insert(key.clone(), (line_no, v.trim().to_string()))
            .is_some()
        {
            return Err(ConfigError::Parse {
                line: line_no,
                msg: format!("duplicate key `{key}`"),
            });
        }
    }

    let get_f64 = |key: &str| -> Result<Option<f64>, ConfigError> {
        match kv.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<f64>().map(Some).map_err(|_| ConfigError::Parse {
                line: *line,
                msg: format!("`{key}` is not a number: `{v}`"),
            }),
        }
    };
    let get_usize = |key: &str| -> Result<Option<usize>, ConfigError> {
        match kv.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse::<usize>()
                .map(Some)
                .map_err(|_| ConfigError::Parse {
                    line: *line,
                    msg: format!("`{key}` is not an integer: `{v}`"),
                }),
        }
    };

    let omega_q = ghz(get_f64("omega_q_ghz")?.unwrap_or(5.0));
    let gamma_rad = ghz(get_f64("gamma_rad_ghz")?.unwrap_or(0.01));
    let gamma_phi = ghz(get_f64("gamma_phi_ghz")?.unwrap_or(0.0));
    let gamma_loss = ghz(get_f64("gamma_loss_ghz")?.unwrap_or(0.0));
    let v_g = get_f64("v_g_m_per_s")?.unwrap_or(3e8);
    let params = SystemParams::new(omega_q, gamma_rad, gamma_phi, gamma_loss, v_g)
        .map_err(|e| ConfigError::Validation(e.to_string()))?;

    let omega_s = match (get_f64("omega_s_ghz")?, get_f64("omega_s_offset_gamma")?) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::Validation(
                "give either omega_s_ghz or omega_s_offset_gamma, not both".into(),
            ))
        }
        (Some(w), None) => ghz(w),
        (None, off) => omega_q + off.unwrap_or(0.0) * gamma_rad,
    };
    let delta = mhz(get_f64("delta_mhz")?.unwrap_or(1.0));
    let length = get_f64("length_m")?.unwrap_or(1.0);
    let pulse = PulseSpec::new(omega_s, delta, length)
        .map_err(|e| ConfigError::Validation(e.to_string()))?;
    let drive = DriveSpec::new(omega_s, mhz(get_f64("rabi_mhz")?.unwrap_or(0.0)))
        .map_err(|e| ConfigError::Validation(e.to_string()))?;

    let direction = match kv.get("direction") {
        None => Direction::Forward,
        Some((line, v)) => match v.as_str() {
            "forward" => Direction::Forward,
            "backward" => Direction::Backward,
            other => {
                return Err(ConfigError::Parse {
                    line: *line,
                    msg: format!("direction must be `forward` or `backward`, got `{other}`"),
                })
            }
        },
    };

    let x_grid = match (
        get_f64("x_min_mm")?,
        get_f64("x_max_mm")?,
        get_usize("x_steps")?,
    ) {
        (None, None, None) => None,
        (Some(lo), Some(hi), steps) => {
            Some(GridSpec::new(lo * 1e-3, hi * 1e-3, steps.unwrap_or(400))?)
        }
        _ => {
            return Err(ConfigError::Validation(
                "x grid needs both x_min_mm and x_max_mm".into(),
            ))
        }
    };
    let t_grid = match (
        get_f64("t_min_ns")?,
        get_f64("t_max_ns")?,
        get_usize("t_steps")?,
    ) {
        (None, None, None) => None,
        (Some(lo), Some(hi), steps) => {
            Some(GridSpec::new(lo * 1e-9, hi * 1e-9, steps.unwrap_or(2000))?)
        }
        _ => {
            return Err(ConfigError::Validation(
                "t grid needs both t_min_ns and t_max_ns".into(),
            ))
        }
    };
    let freq_grid = match (
        get_f64("freq_min_over_omega")?,
        get_f64("freq_max_over_omega")?,
        get_usize("freq_steps")?,
    ) {
        (None, None, None) => None,
        (Some(lo), Some(hi), steps) => Some(GridSpec::new(lo, hi, steps.unwrap_or(401))?),
        _ => {
            return Err(ConfigError::Validation(
                "frequency grid needs both freq_min_over_omega and freq_max_over_omega".into(),
            ))
        }
    };

    Ok(Scenario {
        params,
        pulse,
        drive,
        direction,
        x_fixed: get_f64("x_mm")?.unwrap_or(5.0) * 1e-3,
        t_fixed: get_f64("t_ns")?.unwrap_or(5.0) * 1e-9,
        x0: get_f64("x0_mm")?.unwrap_or(1.0) * 1e-3,
        t0: get_f64("t0_ps")?.unwrap_or(10.0) * 1e-12,
        x_grid,
        t_grid,
        freq_grid,
        periods: get_f64("periods")?.unwrap_or(5.2),
        samples_per_carrier: get_f64("samples_per_carrier")?.unwrap_or(8.0),
        threads: get_usize("threads")?.unwrap_or(0),
    })
}
