//! Run configuration: line-oriented `key = value` text with repeated
//! `[wave]` blocks.
//!
//! ```text
//! mass = 1
//! charge = 1
//! kappa_w = 0
//! a = 0, 0, 0, 0            # constant part, lower index
//! a_gradient = 0, ..., 0    # 16 numbers, row-major d_nu A_mu
//! h = 1e-3
//!
//! [wave]
//! momentum = 1.0630145812734648, 0.3, 0, 0.2
//! spin = 0, 0, 1
//! amplitude = 1, 0          # re, im
//! ```
//!
//! Instead of waves, `grid = FILE` loads sampled data.

use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex;

use crate::error::Error;
use crate::fieldconn::{plane_wave_indexed, Background, GridField, PlaneWave, SpinorField, WaveSuperposition, DEFAULT_H};

const TOP_KEYS: [&str; 13] = [
    "mass",
    "charge",
    "kappa_w",
    "a",
    "a_gradient",
    "w",
    "w_gradient",
    "h",
    "h_tau",
    "tolerance",
    "seed",
    "format",
    "grid",
];
const WAVE_KEYS: [&str; 3] = ["momentum", "spin", "amplitude"];

/// Output flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Records,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "records" => Ok(OutputFormat::Records),
            other => Err(format!("unknown format `{other}` (expected table or records)")),
        }
    }
}

/// Where the spinor field comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Waves(Vec<PlaneWave<f64>>),
    Grid(PathBuf),
}

/// A validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub background: Background<f64>,
    pub field: FieldSpec,
    pub h: f64,
    pub h_tau: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Materializes the field (reads the grid file if there is one).
    pub fn build_field(&self) -> Result<Box<dyn SpinorField<f64>>, Error> {
        match &self.field {
            FieldSpec::Waves(w) => Ok(Box::new(WaveSuperposition::new(w.clone()))),
            FieldSpec::Grid(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read grid {}: {e}", path.display())))?;
                Ok(Box::new(GridField::parse(&text)?))
            }
        }
    }
}

/// One configuration problem.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Every problem found, not only the first.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

fn suggest(key: &str, known: &[&str]) -> String {
    let best = known
        .iter()
        .map(|k| (strsim::jaro_winkler(key, k), *k))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    match best {
        Some((score, k)) if score >= 0.8 => format!("unknown key `{key}`; did you mean `{k}`?"),
        _ => format!("unknown key `{key}`; valid keys are {}", known.join(", ")),
    }
}

#[derive(Default)]
struct WaveDraft {
    line: usize,
    momentum: Option<[f64; 4]>,
    spin: Option<[f64; 3]>,
    amplitude: Option<[f64; 2]>,
}

fn numbers<const N: usize>(v: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = v.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"))?;
        if !o.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(out)
}

fn gradient_matrix(v: [f64; 16]) -> [[f64; 4]; 4] {
    std::array::from_fn(|mu| std::array::from_fn(|nu| v[4 * mu + nu]))
}

/// Parses and validates a configuration. Relative grid paths resolve
/// against `base_dir` (the working directory when `None`).
pub fn parse_config(text: &str, base_dir: Option<&Path>) -> Result<RunConfig, ConfigErrors> {
    let mut errors = Vec::new();
    let mut err = |line: usize, message: String| errors.push(ConfigError { line: Some(line), message });

    let mut mass = None;
    let mut bg = Background::free(1.0);
    let mut h = None;
    let mut h_tau = 0.1;
    let mut tolerance = 1e-6;
    let mut seed = 0u64;
    let mut format = OutputFormat::Table;
    let mut grid: Option<(usize, String)> = None;
    let mut waves: Vec<WaveDraft> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            if line == "[wave]" {
                waves.push(WaveDraft {
                    line: line_no,
                    ..Default::default()
                });
            } else {
                err(line_no, format!("unknown section `{line}` (only [wave] is recognised)"));
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            err(line_no, format!("expected `key = value`, found `{line}`"));
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        if let Some(w) = waves.last_mut() {
            let r = match key {
                "momentum" => numbers::<4>(value).map(|v| w.momentum = Some(v)),
                "spin" => numbers::<3>(value).map(|v| w.spin = Some(v)),
                "amplitude" => numbers::<2>(value).map(|v| w.amplitude = Some(v)),
                _ if TOP_KEYS.contains(&key) => Err(format!("`{key}` must appear before the first [wave] section")),
                _ => Err(suggest(key, &WAVE_KEYS)),
            };
            if let Err(m) = r {
                err(line_no, m);
            }
            continue;
        }
        let scalar = |v: &str| -> Result<f64, String> { numbers::<1>(v).map(|x| x[0]) };
        let r: Result<(), String> = match key {
            "mass" => scalar(value).and_then(|m| {
                if m < 0.0 {
                    Err("mass must be non-negative".into())
                } else {
                    mass = Some(m);
                    Ok(())
                }
            }),
            "charge" => scalar(value).map(|q| bg.charge = q),
            "kappa_w" => scalar(value).map(|k| bg.kappa_w = k),
            "a" => numbers::<4>(value).map(|v| bg.a.constant = v),
            "a_gradient" => numbers::<16>(value).map(|v| bg.a.gradient = gradient_matrix(v)),
            "w" => numbers::<4>(value).map(|v| bg.w.constant = v),
            "w_gradient" => numbers::<16>(value).map(|v| bg.w.gradient = gradient_matrix(v)),
            "h" => scalar(value).and_then(|v| {
                if v > 0.0 {
                    h = Some(v);
                    Ok(())
                } else {
                    Err("h must be positive".into())
                }
            }),
            "h_tau" => scalar(value).and_then(|v| {
                if v > 0.0 {
                    h_tau = v;
                    Ok(())
                } else {
                    Err("h_tau must be positive".into())
                }
            }),
            "tolerance" => scalar(value).and_then(|v| {
                if v > 0.0 {
                    tolerance = v;
                    Ok(())
                } else {
                    Err("tolerance must be positive".into())
                }
            }),
            "seed" => value.parse::<u64>().map(|s| seed = s).map_err(|_| format!("`{value}` is not an unsigned integer")),
            "format" => value.parse::<OutputFormat>().map(|f| format = f),
            "grid" => {
                grid = Some((line_no, value.to_owned()));
                Ok(())
            }
            _ if WAVE_KEYS.contains(&key) => Err(format!("`{key}` belongs inside a [wave] section")),
            _ => Err(suggest(key, &TOP_KEYS)),
        };
        if let Err(m) = r {
            err(line_no, m);
        }
    }

    let mass = match mass {
        Some(m) => m,
        None => {
            errors.push(ConfigError {
                line: None,
                message: "missing required key `mass`".into(),
            });
            1.0
        }
    };
    bg.mass = mass;

    let mut built = Vec::new();
    for (index, w) in waves.iter().enumerate() {
        let mut missing = |what: &str| {
            errors.push(ConfigError {
                line: Some(w.line),
                message: format!("wave {index} is missing `{what}`"),
            })
        };
        let (Some(p), Some(axis)) = (w.momentum, w.spin) else {
            if w.momentum.is_none() {
                missing("momentum");
            }
            if w.spin.is_none() {
                missing("spin");
            }
            continue;
        };
        let amp = w.amplitude.unwrap_or([1.0, 0.0]);
        match plane_wave_indexed(p, axis, Complex::new(amp[0], amp[1]), mass, index) {
            Ok(pw) => built.push(pw),
            Err(e) => errors.push(ConfigError {
                line: Some(w.line),
                message: e.to_string(),
            }),
        }
    }

    let field = match (grid, waves.is_empty()) {
        (Some((line, _)), false) => {
            errors.push(ConfigError {
                line: Some(line),
                message: "give either `grid` or [wave] sections, not both".into(),
            });
            None
        }
        (Some((line, path)), true) => {
            let p = match base_dir {
                Some(b) => b.join(&path),
                None => PathBuf::from(&path),
            };
            if p.is_file() {
                Some(FieldSpec::Grid(p))
            } else {
                errors.push(ConfigError {
                    line: Some(line),
                    message: format!("grid file `{}` not found", p.display()),
                });
                None
            }
        }
        (None, false) => Some(FieldSpec::Waves(built)),
        (None, true) => {
            errors.push(ConfigError {
                line: None,
                message: "no field given: add [wave] sections or a `grid` key".into(),
            });
            None
        }
    };

    match field {
        Some(field) if errors.is_empty() => Ok(RunConfig {
            background: bg,
            field,
            h: h.unwrap_or(DEFAULT_H),
            h_tau,
            tolerance,
            seed,
            format,
        }),
        _ => Err(ConfigErrors(errors)),
    }
}
