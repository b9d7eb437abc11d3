//! Scenario configuration: a versioned JSON document describing the network
//! operating point, what to evaluate at it, and where results go.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::channel::NetworkScenario;
use crate::compensation::JointPriorities;
use crate::effective_capacity::{QosTarget, DEFAULT_TRUNCATION_ORDER};
use crate::error::{Error, Result};

/// The config schema revision this build reads.
pub const SCHEMA_VERSION: u32 = 1;

/// SNR value paired with an explicit unit, so linear ratios and dB never get
/// confused silently.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnrSpec {
    pub value: f64,
    pub unit: SnrUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SnrUnit {
    Linear,
    Db,
}

impl SnrSpec {
    /// The SNR as a linear power ratio, converting from dB when needed.
    pub fn linear(&self) -> f64 {
        match self.unit {
            SnrUnit::Linear => self.value,
            SnrUnit::Db => 10f64.powf(self.value / 10.0),
        }
    }
}

/// Deterministic evaluation route requested by a config or flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSpec {
    Series(usize),
    Direct,
    MonteCarlo,
}

impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(MethodSpec::Direct),
            "mc" => Ok(MethodSpec::MonteCarlo),
            "series" => Ok(MethodSpec::Series(DEFAULT_TRUNCATION_ORDER)),
            other => match other.strip_prefix("series:") {
                Some(m) => m
                    .parse::<usize>()
                    .map(MethodSpec::Series)
                    .map_err(|_| Error::config("method", format!("bad truncation order '{m}'"))),
                None => Err(Error::config(
                    "method",
                    format!("'{other}' is not one of series:M, direct, mc"),
                )),
            },
        }
    }
}

impl std::fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MethodSpec::Series(m) => write!(f, "series:{m}"),
            MethodSpec::Direct => write!(f, "direct"),
            MethodSpec::MonteCarlo => write!(f, "mc"),
        }
    }
}

/// Axis a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Epsilon,
    NNodes,
    Snr,
    Theta,
    Blocklength,
    BystanderOpSinr,
}

impl std::fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SweepVariable::Epsilon => "epsilon",
            SweepVariable::NNodes => "n_nodes",
            SweepVariable::Snr => "snr",
            SweepVariable::Theta => "theta",
            SweepVariable::Blocklength => "blocklength",
            SweepVariable::BystanderOpSinr => "bystander_op_sinr",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Sweep axis: `points` values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub min: f64,
    pub max: f64,
    pub points: u32,
    pub spacing: Spacing,
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::config(
                "sweep.points",
                "a sweep needs at least 2 points",
            ));
        }
        if !(self.min < self.max) {
            return Err(Error::config("sweep.min", "sweep requires min < max"));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(Error::config(
                "sweep.spacing",
                "log spacing requires a positive minimum",
            ));
        }
        Ok(())
    }

    /// The grid values, min and max included.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points as usize;
        (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioSection {
    n_nodes: u32,
    snr: SnrSpec,
    blocklength: u32,
    delay_exponent: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct QosSection {
    outage_probability: f64,
    max_delay: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrioritiesSection {
    eta_alpha: f64,
    eta_theta: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    scenario: ScenarioSection,
    #[serde(default)]
    epsilon: Option<f64>,
    #[serde(default)]
    method: Option<String>,
    #[serde(default)]
    qos: Option<QosSection>,
    #[serde(default)]
    priorities: Option<PrioritiesSection>,
    #[serde(default)]
    sweep: Option<SweepSpec>,
    #[serde(default)]
    output_path: Option<PathBuf>,
}

/// A validated scenario configuration.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: NetworkScenario,
    /// Error probability to operate at; `None` means optimize it.
    pub epsilon: Option<f64>,
    pub method: Option<MethodSpec>,
    pub qos: Option<QosTarget>,
    pub priorities: Option<JointPriorities>,
    pub sweep: Option<SweepSpec>,
    pub output_path: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Reads and validates a JSON config file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parses and validates config text.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text)?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(Error::config(
                "schema_version",
                format!(
                    "this build reads schema version {SCHEMA_VERSION}, file says {}",
                    raw.schema_version
                ),
            ));
        }
        if raw.scenario.n_nodes < 1 {
            return Err(Error::config("scenario.n_nodes", "must be at least 1"));
        }
        let snr = raw.scenario.snr.linear();
        if !(snr > 0.0) || !snr.is_finite() {
            return Err(Error::config(
                "scenario.snr",
                "must convert to a finite positive linear ratio",
            ));
        }
        if raw.scenario.blocklength < 1 {
            return Err(Error::config(
                "scenario.blocklength",
                "must be at least 1 symbol",
            ));
        }
        if !(raw.scenario.delay_exponent > 0.0) || !raw.scenario.delay_exponent.is_finite() {
            return Err(Error::config(
                "scenario.delay_exponent",
                "must be finite and > 0",
            ));
        }
        let scenario = NetworkScenario::new(
            raw.scenario.n_nodes,
            snr,
            raw.scenario.blocklength,
            raw.scenario.delay_exponent,
        )?;
        if let Some(eps) = raw.epsilon {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::config(
                    "epsilon",
                    "must lie strictly inside (0, 1); omit it to optimize",
                ));
            }
        }
        let method = raw
            .method
            .as_deref()
            .map(MethodSpec::from_str)
            .transpose()?;
        let qos = raw
            .qos
            .map(|q| {
                QosTarget::new(q.outage_probability, q.max_delay)
                    .map_err(|e| Error::config("qos", e.to_string()))
            })
            .transpose()?;
        let priorities = raw
            .priorities
            .map(|p| {
                JointPriorities::new(p.eta_alpha, p.eta_theta)
                    .map_err(|e| Error::config("priorities", e.to_string()))
            })
            .transpose()?;
        if let Some(sweep) = &raw.sweep {
            sweep.validate()?;
        }
        Ok(ScenarioConfig {
            scenario,
            epsilon: raw.epsilon,
            method,
            qos,
            priorities,
            sweep: raw.sweep,
            output_path: raw.output_path,
        })
    }
}
