//! Experiment configuration: a TOML file with one section per subcommand.
//! Every run is fully determined by this file (plus explicit CLI overrides),
//! so any output can be regenerated exactly.

use serde::{Deserialize, Serialize};

use qaoa_landscape::search::{InitialStateSpec, ObjectiveSpec};

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub objective: ObjectiveSpec,
    #[serde(default)]
    pub search: SearchSection,
    #[serde(default)]
    pub landscape: LandscapeSection,
    #[serde(default)]
    pub severing: SeveringSection,
    #[serde(default)]
    pub trap_demo: TrapDemoSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        if cfg.schema_version != SCHEMA_VERSION {
            anyhow::bail!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                cfg.schema_version
            );
        }
        Ok(cfg)
    }

    #[cfg(test)]
    pub fn to_toml(&self) -> anyhow::Result<String> {
        Ok(toml::to_string(self)?)
    }
}

/// Settings for `run` (and the per-epsilon runs of `sweep`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchSection {
    pub epsilon: f64,
    pub max_rounds: usize,
    pub record_every: usize,
    pub initial_state: InitialStateSpec,
}

impl Default for SearchSection {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            max_rounds: 1000,
            record_every: 1,
            initial_state: InitialStateSpec::Plus,
        }
    }
}

/// Settings for `landscape`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum LandscapeSection {
    #[default]
    Exhaustive,
    Sample { size: usize, seed: u64 },
}

/// Settings for `severing`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeveringSection {
    /// Distinctness tolerance relative to the traceless sup-norm.
    pub tol: f64,
}

impl Default for SeveringSection {
    fn default() -> Self {
        Self { tol: 1e-14 }
    }
}

/// Settings for `trap-demo`: a short, tiny-step run started next to the most
/// trap-like non-optimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrapDemoSection {
    pub epsilon: f64,
    pub max_rounds: usize,
    pub delta: f64,
}

impl Default for TrapDemoSection {
    fn default() -> Self {
        Self {
            epsilon: 0.001,
            max_rounds: 100,
            delta: 0.1,
        }
    }
}

/// Settings for `sweep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepSection {
    pub epsilons: Vec<f64>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            epsilons: vec![0.01, 0.1, 1.0],
        }
    }
}
