//! Optional TOML configuration mirroring the command-line flags. Every
//! field is optional; flags override file values, and built-in defaults
//! fill whatever remains. A fully specified file looks like:
//!
//! ```toml
//! seed = 42
//! workers = 4
//! threshold = 0.05
//!
//! [seg]
//! spread = 0.197
//! corr = 0.67
//!
//! [clf]
//! congruence = 0.67
//! baseline = 0.737
//! prior = [1.0, 1.0, 1.0, 1.0]
//! outer-samples = 10000
//! mc-samples = 100000
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::CliError;

/// Built-in defaults, used when neither a flag nor a config entry is given.
/// The spread and correlation values are the calibrated segmentation
/// parameters; the classification entries mirror `ClfParams::default()`.
pub mod defaults {
    pub const SEED: u64 = 42;
    pub const THRESHOLD: f64 = 0.05;
    pub const SEG_SPREAD: f64 = 0.197;
    pub const SEG_CORR: f64 = 0.67;
    pub const CLF_CONGRUENCE: f64 = 0.67;
    pub const CLF_BASELINE: f64 = 0.737;
    pub const CLF_PRIOR: [f64; 4] = [1.0; 4];
    pub const CLF_OUTER_SAMPLES: u32 = 10_000;
    pub const CLF_MC_SAMPLES: u32 = 100_000;
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Config {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub threshold: Option<f64>,
    #[serde(default)]
    pub seg: SegConfig,
    #[serde(default)]
    pub clf: ClfConfig,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SegConfig {
    pub spread: Option<f64>,
    pub corr: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ClfConfig {
    pub congruence: Option<f64>,
    pub baseline: Option<f64>,
    pub prior: Option<[f64; 4]>,
    pub outer_samples: Option<u32>,
    pub mc_samples: Option<u32>,
}

impl Config {
    /// Loads a config file, or the empty config when no path is given.
    pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }
}
