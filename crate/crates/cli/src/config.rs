//! Run configuration: a JSON document whose quantities are lab-unit strings
//! such as `"10 um"`. Every field has a default, so `{}` is a complete config.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    pub atom: AtomConfig,
    pub resonator: ResonatorConfig,
    pub environment: EnvironmentConfig,
    pub simulation: SimulationConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub disc_radius: String,
    pub atom_height: String,
    pub wire_length: String,
    pub log_coax_ratio: f64,
    pub pillar_height: String,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            disc_radius: "10 um".into(),
            atom_height: "10 um".into(),
            wire_length: "3 mm".into(),
            log_coax_ratio: 1.0,
            pillar_height: "30 um".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AtomConfig {
    pub principal_n: u32,
    pub species_mass: String,
    /// Trap frequency, either ν (`"50 kHz"`) or ω (`"50 2pi*kHz"`).
    pub trap_frequency: String,
}

impl Default for AtomConfig {
    fn default() -> Self {
        AtomConfig {
            principal_n: 50,
            species_mass: "86.909180527 u".into(),
            trap_frequency: "50 kHz".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalCap {
    pub label: String,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResonatorConfig {
    pub mode_index: u32,
    /// Frequency the mode is held at: `"mode"` for nπv/L, `"atom"` for the
    /// hydrogenic Np → (N−1)s line, or an explicit value such as `"50 GHz"`.
    pub frequency: String,
    pub q_factor: f64,
    /// v/v₀
    pub velocity_ratio: f64,
    pub contact_resistance: String,
    pub external_caps: Vec<ExternalCap>,
    /// Take Q from the itemized budget instead of `q_factor`.
    pub use_q_budget: bool,
}

impl Default for ResonatorConfig {
    fn default() -> Self {
        ResonatorConfig {
            mode_index: 1,
            frequency: "mode".into(),
            q_factor: 1e6,
            velocity_ratio: 1.0,
            contact_resistance: "0.1 Ohm".into(),
            external_caps: Vec::new(),
            use_q_budget: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvironmentConfig {
    pub temperature: String,
    pub patch_shift: String,
    pub stray_island_radius: String,
    pub stray_island_distance: String,
    /// Stark manifold index; `null` means N − 1.
    pub stark_k: Option<i64>,
    pub vdw_ell: u32,
    /// γ entering the cooperativity.
    pub atomic_dephasing: String,
    pub gamma_decay: String,
    pub gamma_phi: String,
    /// Heating excursion time; `null` means π/g.
    pub interaction_time: Option<String>,
}

impl Default for EnvironmentConfig {
    fn default() -> Self {
        EnvironmentConfig {
            temperature: "100 mK".into(),
            patch_shift: "7 MHz".into(),
            stray_island_radius: "10 um".into(),
            stray_island_distance: "10 um".into(),
            stark_k: None,
            vdw_ell: 1,
            atomic_dephasing: "1 kHz".into(),
            gamma_decay: "1 kHz".into(),
            gamma_phi: "1 kHz".into(),
            interaction_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    VacuumRabi,
    StateTransfer,
    TwoAtomExchange,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::VacuumRabi => "vacuum_rabi",
            Scenario::StateTransfer => "state_transfer",
            Scenario::TwoAtomExchange => "two_atom_exchange",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    pub scenario: Scenario,
    /// Explicit sample times; overrides `t_end`/`samples`.
    pub times: Option<Vec<String>>,
    /// Default depends on the scenario.
    pub t_end: Option<String>,
    pub samples: usize,
    pub fock_cutoff: usize,
    /// Atom minus mode frequency.
    pub detuning: String,
    pub rtol: f64,
    pub atol: f64,
    /// Drop κ and both atomic rates.
    pub lossless: bool,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            scenario: Scenario::VacuumRabi,
            times: None,
            t_end: None,
            samples: 201,
            fock_cutoff: 8,
            detuning: "0 MHz".into(),
            rtol: 1e-9,
            atol: 1e-12,
            lossless: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Option<Format>,
    pub path: Option<String>,
}

/// Numeric fields a sweep may vary.
pub const SWEEPABLE: &[&str] = &[
    "geometry.disc_radius",
    "geometry.atom_height",
    "geometry.wire_length",
    "geometry.log_coax_ratio",
    "geometry.pillar_height",
    "atom.principal_n",
    "atom.species_mass",
    "atom.trap_frequency",
    "resonator.mode_index",
    "resonator.frequency",
    "resonator.q_factor",
    "resonator.velocity_ratio",
    "resonator.contact_resistance",
    "environment.temperature",
    "environment.patch_shift",
    "environment.stray_island_radius",
    "environment.stray_island_distance",
    "environment.stark_k",
    "environment.vdw_ell",
    "environment.atomic_dephasing",
    "environment.gamma_decay",
    "environment.gamma_phi",
    "environment.interaction_time",
];

/// A parsed config plus the text it came from, for line diagnostics.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: RunConfig,
    source: Option<(String, String)>,
}

impl LoadedConfig {
    pub fn defaults() -> Self {
        LoadedConfig {
            config: RunConfig::default(),
            source: None,
        }
    }

    /// Same source text, different values.
    pub fn with_config(&self, config: RunConfig) -> Self {
        LoadedConfig {
            config,
            source: self.source.clone(),
        }
    }

    /// Prefix `message` with the location of `field` (a dotted path).
    pub fn diagnostic(&self, field: &str, message: impl std::fmt::Display) -> CliError {
        let key = field.rsplit('.').next().unwrap_or(field);
        let needle = format!("\"{key}\"");
        let location = self.source.as_ref().and_then(|(name, text)| {
            text.lines()
                .position(|line| line.contains(&needle))
                .map(|i| format!("{name}:{}: ", i + 1))
        });
        CliError::Config(format!(
            "{}{field}: {message}",
            location.unwrap_or_default()
        ))
    }
}

/// Read `path` (if any), apply `--set` overrides and deserialize.
pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<LoadedConfig, CliError> {
    let (value, source) = match path {
        Some(path) => {
            let name = path.display().to_string();
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read config {name}: {e}")))?;
            let text_or_empty = if text.trim().is_empty() {
                "{}"
            } else {
                text.as_str()
            };
            // Deserializing straight from the text first reports both the
            // line and the field path of any problem in the file itself.
            let mut de = serde_json::Deserializer::from_str(text_or_empty);
            serde_path_to_error::deserialize::<_, RunConfig>(&mut de).map_err(|e| {
                let inner = e.inner();
                CliError::Config(format!(
                    "{name}:{}:{}: {}: {inner}",
                    inner.line(),
                    inner.column(),
                    e.path()
                ))
            })?;
            let value: Value = serde_json::from_str(text_or_empty)
                .map_err(|e| CliError::Config(format!("{name}: {e}")))?;
            (value, Some((name, text)))
        }
        None => (Value::Object(Default::default()), None),
    };
    let value = apply_overrides(value, overrides)?;
    let config = from_value(value, "--set")?;
    Ok(LoadedConfig { config, source })
}

fn from_value(value: Value, origin: &str) -> Result<RunConfig, CliError> {
    serde_path_to_error::deserialize(value)
        .map_err(|e| CliError::Config(format!("{origin}: {}: {}", e.path(), e.inner())))
}

/// Apply `key=value` overrides. Values that parse as JSON are taken as JSON
/// (`1e6`, `true`, `null`), anything else as a string (`10 um`).
pub fn apply_overrides(mut value: Value, overrides: &[String]) -> Result<Value, CliError> {
    for item in overrides {
        let (path, raw) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects key=value, got `{item}`")))?;
        set_path(&mut value, path.trim(), parse_scalar(raw.trim()))?;
    }
    Ok(value)
}

pub fn parse_scalar(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}

pub fn set_path(root: &mut Value, path: &str, new: Value) -> Result<(), CliError> {
    let parts: Vec<&str> = path.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Usage(format!("malformed key `{path}`")));
    }
    let mut node = root;
    for part in &parts[..parts.len() - 1] {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| CliError::Usage(format!("`{path}`: `{part}` is not a section")))?;
        node = obj
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    let obj = node
        .as_object_mut()
        .ok_or_else(|| CliError::Usage(format!("`{path}` does not name a config field")))?;
    obj.insert(parts[parts.len() - 1].to_string(), new);
    Ok(())
}

/// The config as a JSON value, for re-applying sweep overrides.
pub fn to_value(config: &RunConfig) -> Value {
    serde_json::to_value(config).expect("config serializes")
}

pub fn from_json(value: Value) -> Result<RunConfig, CliError> {
    from_value(value, "sweep")
}
