use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::aero::{AirfoilPolar, FlightCondition, StabilityConfig, WingGeometry};
use crate::angle::rad;
use crate::linkage::{
    validate_params, AuxLengths, LinkageError, LinkageParams, PhaseAnchor, PhaseMapping,
};
use crate::morphology::{ModelInputs, SelectionThresholds, StateAnchor};
use crate::synthesis::SynthesisProblem;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {path}: {reason}")]
    SchemaViolation { path: String, reason: String },
    #[error("bad override '{0}': expected key.path=value")]
    BadOverride(String),
}

impl ConfigError {
    pub fn class(&self) -> &'static str {
        match self {
            ConfigError::Io { .. } => "Io",
            ConfigError::ParseError { .. } => "ParseError",
            ConfigError::SchemaViolation { .. } => "SchemaViolation",
            ConfigError::BadOverride(_) => "BadOverride",
        }
    }

    pub(crate) fn schema(path: &str, reason: impl Into<String>) -> Self {
        ConfigError::SchemaViolation {
            path: path.to_string(),
            reason: reason.into(),
        }
    }
}

fn proto() -> LinkageParams {
    LinkageParams::prototype()
}

/// Link lengths in mm, mount offsets in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkageBlock {
    #[serde(default = "d_l1")]
    pub l1: f64,
    #[serde(default = "d_l2")]
    pub l2: f64,
    #[serde(default = "d_l3")]
    pub l3: f64,
    #[serde(default = "d_l4")]
    pub l4: f64,
    #[serde(default = "d_eps")]
    pub epsilon_deg: f64,
    #[serde(default = "d_xi")]
    pub xi_deg: f64,
    #[serde(default = "d_aux")]
    pub aux: AuxLengths,
    #[serde(default)]
    pub mapping: PhaseMapping,
}

fn d_l1() -> f64 {
    proto().l1
}
fn d_l2() -> f64 {
    proto().l2
}
fn d_l3() -> f64 {
    proto().l3
}
fn d_l4() -> f64 {
    proto().l4
}
fn d_eps() -> f64 {
    proto().epsilon.to_degrees()
}
fn d_xi() -> f64 {
    proto().xi.to_degrees()
}
fn d_aux() -> AuxLengths {
    proto().aux
}

impl LinkageBlock {
    pub fn params(&self) -> LinkageParams {
        LinkageParams {
            l1: self.l1,
            l2: self.l2,
            l3: self.l3,
            l4: self.l4,
            epsilon: rad(self.epsilon_deg),
            xi: rad(self.xi_deg),
            aux: self.aux,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AeroBlock {
    #[serde(default)]
    pub geometry: WingGeometry,
    #[serde(default)]
    pub polar: AirfoilPolar,
    #[serde(default)]
    pub condition: FlightCondition,
    #[serde(default)]
    pub stability: StabilityConfig,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorsBlock {
    /// `(phase, psi1)` pairs used by `calibrate`.
    #[serde(default)]
    pub calibration: Vec<PhaseAnchor>,
    /// Reference rows for the flight-state comparison.
    #[serde(default)]
    pub states: Vec<StateAnchor>,
    /// Replace `linkage.mapping` with the calibrated one for `solve`,
    /// `sweep` and `states`.
    #[serde(default)]
    pub use_calibrated_mapping: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    #[serde(default = "d_step")]
    pub grid_step_deg: f64,
}

fn d_step() -> f64 {
    1.0
}

impl Default for SweepBlock {
    fn default() -> Self {
        Self {
            grid_step_deg: d_step(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Gnuplot,
    Text,
}

/// JSON reports are always written; `formats` selects the extra files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default)]
    pub directory: Option<PathBuf>,
    #[serde(default = "d_formats")]
    pub formats: Vec<OutputFormat>,
}

fn d_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv, OutputFormat::Gnuplot, OutputFormat::Text]
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self {
            directory: None,
            formats: d_formats(),
        }
    }
}

impl OutputBlock {
    pub fn wants(&self, f: OutputFormat) -> bool {
        self.formats.contains(&f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectConfig {
    pub linkage: LinkageBlock,
    #[serde(default)]
    pub aero: Option<AeroBlock>,
    #[serde(default)]
    pub synthesis: Option<SynthesisProblem>,
    #[serde(default)]
    pub anchors: Option<AnchorsBlock>,
    #[serde(default)]
    pub selection: SelectionThresholds,
    #[serde(default)]
    pub sweep: SweepBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

impl ProjectConfig {
    pub fn params(&self) -> LinkageParams {
        self.linkage.params()
    }

    pub fn aero(&self) -> Result<&AeroBlock, ConfigError> {
        self.aero
            .as_ref()
            .ok_or_else(|| ConfigError::schema("aero", "block is required for this command"))
    }

    pub fn model_inputs(&self, mapping: PhaseMapping) -> Result<ModelInputs, ConfigError> {
        let a = self.aero()?;
        Ok(ModelInputs {
            params: self.params(),
            mapping,
            geometry: a.geometry,
            polar: a.polar,
            condition: a.condition,
            stability: a.stability,
        })
    }

    fn validate(&self) -> Result<(), ConfigError> {
        validate_params(self.params()).map_err(|e| {
            let path = match &e {
                LinkageError::NonPositiveLength { name, .. } if name.starts_with('l') => {
                    format!("linkage.{name}")
                }
                LinkageError::NonPositiveLength { name, .. } => format!("linkage.aux.{name}"),
                LinkageError::InvalidOffsetAngle { name, .. } => format!("linkage.{name}_deg"),
                _ => "linkage".to_string(),
            };
            ConfigError::schema(&path, e.to_string())
        })?;
        if let Some(a) = &self.aero {
            a.geometry
                .validate()
                .map_err(|e| ConfigError::schema("aero.geometry", e.to_string()))?;
            a.polar
                .validate()
                .map_err(|e| ConfigError::schema("aero.polar", e.to_string()))?;
            a.condition
                .validate()
                .map_err(|e| ConfigError::schema("aero.condition", e.to_string()))?;
        }
        if let Some(s) = &self.synthesis {
            s.validate()
                .map_err(|e| ConfigError::schema("synthesis", e.to_string()))?;
        }
        let k = self.selection.kappa;
        if !(k.is_finite() && (0.0..=1.0).contains(&k)) {
            return Err(ConfigError::schema("selection.kappa", "must lie in [0, 1]"));
        }
        if !(self.selection.stability_margin.is_finite() && self.selection.stability_margin >= 0.0)
        {
            return Err(ConfigError::schema(
                "selection.stability_margin",
                "must be non-negative",
            ));
        }
        let step = self.sweep.grid_step_deg;
        if !(step > 0.0 && step <= 10.0) {
            return Err(ConfigError::schema(
                "sweep.grid_step_deg",
                "must lie in (0, 10]",
            ));
        }
        Ok(())
    }
}

/// A validated config plus the canonical JSON it was built from.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: ProjectConfig,
    pub canonical: Value,
}

impl LoadedConfig {
    /// SHA-256 of the canonical (key-sorted, compact) JSON after overrides.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.canonical).expect("JSON values serialize");
        hex(&Sha256::digest(bytes))
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn apply_override(root: &mut Value, arg: &str) -> Result<(), ConfigError> {
    let (key, raw) = arg
        .split_once('=')
        .ok_or_else(|| ConfigError::BadOverride(arg.into()))?;
    let parts: Vec<&str> = key.trim().split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(ConfigError::BadOverride(arg.into()));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    for (i, part) in parts.iter().enumerate() {
        let Value::Object(map) = node else {
            return Err(ConfigError::schema(
                &parts[..i].join("."),
                "cannot override inside a non-object",
            ));
        };
        if i + 1 == parts.len() {
            map.insert(part.to_string(), value);
            return Ok(());
        }
        node = map
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
    }
    unreachable!("override path has at least one segment")
}

/// Parses JSON text, applies `key.path=value` overrides and validates.
pub fn parse_config(text: &str, overrides: &[String]) -> Result<LoadedConfig, ConfigError> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| ConfigError::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if !value.is_object() {
        return Err(ConfigError::schema(
            "(root)",
            "config must be a JSON object",
        ));
    }
    for o in overrides {
        apply_override(&mut value, o)?;
    }
    let config: ProjectConfig = serde_path_to_error::deserialize(value.clone()).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::SchemaViolation {
            path: if path == "." { "(root)".into() } else { path },
            reason: e.into_inner().to_string(),
        }
    })?;
    config.validate()?;
    Ok(LoadedConfig {
        config,
        canonical: value,
    })
}

pub fn load_config(path: &Path, overrides: &[String]) -> Result<LoadedConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text, overrides)
}
