//! Scenario config files.
//!
//! ```text
//! # comment
//! [radial_modes]
//! eta = 0.1
//! gamma = 0
//! sweep = eta 1e-6 1e-1 6
//! sweep_spacing = log
//! output = radial.csv
//! format = csv
//! ```
//!
//! The bracketed header names the scenario and must come before any key.
//! Every other non-blank line is `key = value`; `#` starts a comment.
//! `sweep`, `sweep_spacing`, `output` and `format` are reserved, all other
//! keys must belong to the scenario's schema. Keys left out take the schema
//! default. `sweep = key start stop count` accepts spaces or commas between
//! fields and needs count ≥ 2.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::classification::log_eta_ladder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    DiffusiveFilament,
    EuclideanFast,
    Heliotron,
    RadialModes,
    ChiconeLatushkin,
    CurvatureReport,
    StretchAnalysis,
}

const DIFFUSIVE_FILAMENT: &[(&str, f64)] = &[
    ("b0", 1.0),
    ("eta", 0.05),
    ("length", 20.0),
    ("kappa0", 1.0),
    ("kappa_amp", 0.1),
    ("kappa_wavenumber", 1.0),
    ("tau0", 0.5),
    ("tau_amp", 0.0),
];

const EUCLIDEAN_FAST: &[(&str, f64)] = &[
    ("b0", 1.0),
    ("tau0", 0.1),
    ("v0", 0.1),
    ("c1", 0.0),
    ("a", 1.0),
    ("s", 0.0),
    ("t_end", 100.0),
    ("samples", 101.0),
    ("weak_torsion", 0.0),
];

const HELIOTRON: &[(&str, f64)] = &[
    ("b_s0", 1.0),
    ("b_theta0", 0.5),
    ("u_s", 0.0),
    ("u_theta", 1.0),
    ("gamma", 0.0),
    ("tau0", 1.0),
    ("u_max", 1.0),
    ("length", 1.0),
    ("re_m", 100.0),
    ("theta", 0.3),
    ("r", 0.5),
    ("kappa", 0.2),
    ("a", 1.0),
    ("theta_r", 0.0),
    ("m", 0.0),
];

const RADIAL_MODES: &[(&str, f64)] = &[("eta", 0.1), ("gamma", 0.0)];

const CHICONE_LATUSHKIN: &[(&str, f64)] = &[("eta", 0.1), ("kappa", -1.0)];

const CURVATURE_REPORT: &[(&str, f64)] = &[("kappa", 0.2), ("r", 0.5), ("theta", 0.3), ("step", 0.0)];

const STRETCH_ANALYSIS: &[(&str, f64)] = &[
    ("v_theta", 1.0),
    ("v0", 1.0),
    ("tau0", 0.5),
    ("a", 1.0),
    ("l0", 1.0),
    ("duration", 1.0),
    ("kappa", 0.5),
    ("v_n", 0.2),
    ("v_s_prime", 0.1),
];

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::DiffusiveFilament,
        Scenario::EuclideanFast,
        Scenario::Heliotron,
        Scenario::RadialModes,
        Scenario::ChiconeLatushkin,
        Scenario::CurvatureReport,
        Scenario::StretchAnalysis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::DiffusiveFilament => "diffusive_filament",
            Scenario::EuclideanFast => "euclidean_fast",
            Scenario::Heliotron => "heliotron",
            Scenario::RadialModes => "radial_modes",
            Scenario::ChiconeLatushkin => "chicone_latushkin",
            Scenario::CurvatureReport => "curvature_report",
            Scenario::StretchAnalysis => "stretch_analysis",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Parameter keys in column order with their defaults.
    pub fn schema(self) -> &'static [(&'static str, f64)] {
        match self {
            Scenario::DiffusiveFilament => DIFFUSIVE_FILAMENT,
            Scenario::EuclideanFast => EUCLIDEAN_FAST,
            Scenario::Heliotron => HELIOTRON,
            Scenario::RadialModes => RADIAL_MODES,
            Scenario::ChiconeLatushkin => CHICONE_LATUSHKIN,
            Scenario::CurvatureReport => CURVATURE_REPORT,
            Scenario::StretchAnalysis => STRETCH_ANALYSIS,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => {
                let step = (self.stop - self.start) / (self.count - 1) as f64;
                (0..self.count)
                    .map(|i| if i + 1 == self.count { self.stop } else { self.start + i as f64 * step })
                    .collect()
            }
            Spacing::Log => log_eta_ladder(self.start, self.stop, self.count),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn general(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A parameter point: schema keys to values, in schema order.
pub type ParamPoint = Vec<(&'static str, f64)>;

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    /// explicitly set keys
    pub parameters: BTreeMap<String, f64>,
    pub sweep: Option<Sweep>,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::general(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let (Some(out), Some(dir)) = (cfg.output.as_mut(), path.parent()) {
            if out.is_relative() {
                *out = dir.join(&*out);
            }
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut scenario = None;
        let mut parameters = BTreeMap::new();
        let mut sweep_fields: Option<(usize, Vec<String>)> = None;
        let mut spacing: Option<(usize, Spacing)> = None;
        let mut output = None;
        let mut format = None;
        let mut seen = BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(inner) = line.strip_prefix('[') {
                let name = inner
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::at(line_no, "unterminated scenario header"))?
                    .trim();
                if scenario.is_some() {
                    return Err(ConfigError::at(line_no, "only one scenario header is allowed"));
                }
                let s = Scenario::from_name(name)
                    .ok_or_else(|| ConfigError::at(line_no, format!("unknown scenario '{name}'")))?;
                scenario = Some(s);
                continue;
            }
            let Some(s) = scenario else {
                return Err(ConfigError::at(line_no, "expected a [scenario] header before any key"));
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::at(line_no, format!("expected 'key = value', found '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(ConfigError::at(line_no, "empty key"));
            }
            if let Some(prev) = seen.insert(key.to_string(), line_no) {
                return Err(ConfigError::at(
                    line_no,
                    format!("duplicate key '{key}' (first set on line {prev})"),
                ));
            }
            match key {
                "sweep" => {
                    let fields: Vec<String> = value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|f| !f.is_empty())
                        .map(str::to_string)
                        .collect();
                    sweep_fields = Some((line_no, fields));
                }
                "sweep_spacing" => {
                    let sp = match value {
                        "linear" => Spacing::Linear,
                        "log" => Spacing::Log,
                        _ => {
                            return Err(ConfigError::at(
                                line_no,
                                format!("sweep_spacing must be 'linear' or 'log', found '{value}'"),
                            ))
                        }
                    };
                    spacing = Some((line_no, sp));
                }
                "output" => {
                    if value.is_empty() {
                        return Err(ConfigError::at(line_no, "output path is empty"));
                    }
                    output = Some(PathBuf::from(value));
                }
                "format" => {
                    format = Some(OutputFormat::parse(value).ok_or_else(|| {
                        ConfigError::at(line_no, format!("format must be 'csv' or 'json', found '{value}'"))
                    })?);
                }
                _ => {
                    if !s.schema().iter().any(|(k, _)| *k == key) {
                        return Err(ConfigError::at(
                            line_no,
                            format!("unknown key '{key}' for scenario {s}"),
                        ));
                    }
                    parameters.insert(key.to_string(), parse_number(line_no, key, value)?);
                }
            }
        }

        let scenario = scenario.ok_or_else(|| ConfigError::general("missing [scenario] header"))?;
        let sweep = match sweep_fields {
            None => {
                if let Some((l, _)) = spacing {
                    return Err(ConfigError::at(l, "sweep_spacing given without sweep"));
                }
                None
            }
            Some((l, fields)) => Some(parse_sweep(scenario, l, &fields, spacing.map(|p| p.1))?),
        };
        Ok(ScenarioConfig {
            scenario,
            parameters,
            sweep,
            output,
            format,
        })
    }

    /// Value of a schema key, falling back to its default.
    pub fn value(&self, key: &str) -> Option<f64> {
        self.parameters
            .get(key)
            .copied()
            .or_else(|| self.scenario.schema().iter().find(|(k, _)| *k == key).map(|p| p.1))
    }

    /// Parameter points in sweep order; a single point without a sweep.
    pub fn points(&self) -> Vec<ParamPoint> {
        let base: ParamPoint = self
            .scenario
            .schema()
            .iter()
            .map(|&(k, d)| (k, self.parameters.get(k).copied().unwrap_or(d)))
            .collect();
        match &self.sweep {
            None => vec![base],
            Some(sw) => sw
                .values()
                .into_iter()
                .map(|v| {
                    base.iter()
                        .map(|&(k, x)| (k, if k == sw.key { v } else { x }))
                        .collect()
                })
                .collect(),
        }
    }
}

fn parse_number(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = value
        .parse()
        .map_err(|_| ConfigError::at(line, format!("value of '{key}' is not a number: '{value}'")))?;
    if !v.is_finite() {
        return Err(ConfigError::at(line, format!("value of '{key}' must be finite")));
    }
    Ok(v)
}

fn parse_sweep(scenario: Scenario, line: usize, fields: &[String], spacing: Option<Spacing>) -> Result<Sweep, ConfigError> {
    let [key, start, stop, count] = fields else {
        return Err(ConfigError::at(line, "sweep needs 'key start stop count'"));
    };
    if !scenario.schema().iter().any(|(k, _)| k == key) {
        return Err(ConfigError::at(
            line,
            format!("unknown key '{key}' for scenario {scenario}"),
        ));
    }
    let start = parse_number(line, "sweep start", start)?;
    let stop = parse_number(line, "sweep stop", stop)?;
    let count: usize = count
        .parse()
        .map_err(|_| ConfigError::at(line, format!("sweep count is not a non-negative integer: '{count}'")))?;
    if count < 2 {
        return Err(ConfigError::at(line, format!("sweep count must be at least 2, found {count}")));
    }
    let spacing = spacing.unwrap_or(Spacing::Linear);
    if spacing == Spacing::Log && !(start > 0.0 && stop > 0.0) {
        return Err(ConfigError::at(line, "log sweep needs positive start and stop"));
    }
    Ok(Sweep {
        key: key.clone(),
        start,
        stop,
        count,
        spacing,
    })
}
