//! Scenario configuration, read from TOML.
//!
//! Every key has a default; a file only needs the keys it changes.
//! Units: meters, MHz, Mbps, dBm.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::channel::{DEFAULT_USER_HEIGHT_M, THERMAL_NOISE_DBM_HZ};
use crate::error::{Error, Result};
use crate::model::{Point, SpKind, SpProfile, UserProfile};
use crate::prospect::DecisionModel;

const FEET_TO_METERS: f64 = 0.3048;

/// The shipped defaults, also available as `config/default.toml`.
pub const DEFAULT_CONFIG_TOML: &str = include_str!("../../config/default.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    /// Independent placements per sweep point.
    pub trials: usize,
    /// Loads to sweep.
    pub sweep: Vec<usize>,
    /// Load used by single-game queries.
    pub n_users: usize,
    pub n_wifi: usize,
    pub area_side_m: f64,
    /// Radius of the WiFi ring as a fraction of the area side.
    pub wifi_ring_fraction: f64,
    pub user_height_m: f64,
    pub noise_density_dbm_hz: f64,
    /// Probability that a placed user is active.
    pub activity_probability: f64,
    /// Whether sweeps include the bandwidth-expansion scenario.
    pub expansion_enabled: bool,
    pub model: ModelConfig,
    pub user: UserConfig,
    pub cellular: SpConfig,
    /// Every WiFi access point shares these parameters.
    pub wifi: SpConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub prelec_alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UserConfig {
    pub delta: f64,
    pub theta: f64,
    pub b_min: f64,
}

/// Provider parameters without placement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpConfig {
    pub alpha: f64,
    pub beta: f64,
    pub cost_rate: f64,
    pub cost_bw: f64,
    pub bw_total_mhz: f64,
    pub tx_power_dbm: f64,
    pub g_ba: f64,
    pub frequency_mhz: f64,
    pub antenna_height_m: f64,
    pub coverage_snr_threshold_db: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage_radius_m: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// How users weigh the advertised guarantee.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Eut,
    Pt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: PathBuf,
    pub format: OutputFormat,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            seed: 20_240_901,
            trials: 20,
            sweep: (1..=10).map(|k| 50 * k).collect(),
            n_users: 200,
            n_wifi: 8,
            area_side_m: 600.0,
            wifi_ring_fraction: 0.4,
            user_height_m: DEFAULT_USER_HEIGHT_M,
            noise_density_dbm_hz: THERMAL_NOISE_DBM_HZ,
            activity_probability: 1.0,
            expansion_enabled: true,
            model: ModelConfig::default(),
            user: UserConfig::default(),
            cellular: SpConfig::default_cellular(),
            wifi: SpConfig::default_wifi(),
            output: OutputConfig::default(),
        }
    }
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig { prelec_alpha: 0.7 }
    }
}

impl Default for UserConfig {
    fn default() -> Self {
        UserConfig {
            delta: 1000.0,
            theta: 2.0,
            b_min: 0.5,
        }
    }
}

impl SpConfig {
    pub fn default_cellular() -> Self {
        SpConfig {
            alpha: 0.06,
            beta: 1.2,
            cost_rate: 0.01,
            cost_bw: 0.2,
            bw_total_mhz: 20.0,
            tx_power_dbm: 43.0,
            g_ba: 0.9,
            frequency_mhz: 900.0,
            antenna_height_m: 30.0,
            coverage_snr_threshold_db: 0.0,
            coverage_radius_m: None,
        }
    }

    pub fn default_wifi() -> Self {
        SpConfig {
            alpha: 0.04,
            beta: 1.2,
            cost_rate: 0.01,
            cost_bw: 0.2,
            bw_total_mhz: 40.0,
            tx_power_dbm: 23.0,
            g_ba: 0.9,
            frequency_mhz: 2400.0,
            antenna_height_m: 6.0,
            coverage_snr_threshold_db: 0.0,
            coverage_radius_m: Some(300.0 * FEET_TO_METERS),
        }
    }

    pub fn profile(&self, kind: SpKind, position: Point) -> SpProfile {
        SpProfile {
            kind,
            alpha: self.alpha,
            beta: self.beta,
            cost_rate: self.cost_rate,
            cost_bw: self.cost_bw,
            bw_total: self.bw_total_mhz,
            tx_power_dbm: self.tx_power_dbm,
            g_ba: self.g_ba,
            position,
            frequency_mhz: self.frequency_mhz,
            antenna_height_m: self.antenna_height_m,
            coverage_snr_threshold_db: self.coverage_snr_threshold_db,
            coverage_radius_m: self.coverage_radius_m,
        }
    }
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            path: PathBuf::from("sweep.csv"),
            format: OutputFormat::Csv,
        }
    }
}

impl ScenarioConfig {
    /// Parses a (possibly partial) config; missing keys, including keys
    /// inside a provider table, keep their defaults.
    pub fn from_toml_str(text: &str) -> std::result::Result<Self, String> {
        let overrides: toml::Table = text.parse().map_err(|e: toml::de::Error| e.message().to_string())?;
        let mut merged = toml::Table::try_from(ScenarioConfig::default()).map_err(|e| e.to_string())?;
        merge(&mut merged, overrides);
        let cfg: ScenarioConfig = toml::Value::Table(merged)
            .try_into()
            .map_err(|e: toml::de::Error| e.message().to_string())?;
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|message| Error::Config {
            path: path.to_path_buf(),
            message,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_users == 0 {
            return Err(Error::invalid("n_users", "must be at least 1"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be at least 1"));
        }
        if self.sweep.is_empty() || self.sweep.contains(&0) {
            return Err(Error::invalid("sweep", "must list positive loads"));
        }
        if !(self.area_side_m > 0.0) {
            return Err(Error::invalid("area_side_m", "must be positive"));
        }
        if !(0.0..=0.5).contains(&self.wifi_ring_fraction) {
            return Err(Error::invalid("wifi_ring_fraction", "must lie in [0, 0.5]"));
        }
        if !(self.user_height_m > 0.0) {
            return Err(Error::invalid("user_height_m", "must be positive"));
        }
        if !(0.0..=1.0).contains(&self.activity_probability) {
            return Err(Error::invalid("activity_probability", "must lie in [0, 1]"));
        }
        self.decision_model(true)?;
        self.user_profile(Point::default())?;
        self.cellular.profile(SpKind::Cellular, Point::default()).validate()?;
        self.wifi.profile(SpKind::WiFi, Point::default()).validate()?;
        Ok(())
    }

    /// The configured prospect-theory model, or plain expected utility.
    pub fn decision_model(&self, prospect: bool) -> Result<DecisionModel> {
        if prospect {
            DecisionModel::prospect(self.model.prelec_alpha)
        } else {
            Ok(DecisionModel::Eut)
        }
    }

    pub fn model_of(&self, kind: ModelKind) -> Result<DecisionModel> {
        self.decision_model(kind == ModelKind::Pt)
    }

    pub fn user_profile(&self, position: Point) -> Result<UserProfile> {
        Ok(UserProfile::new(self.user.delta, self.user.theta, self.user.b_min)?.at(position))
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        if let Some(s) = seed {
            self.seed = s;
        }
        self
    }
}

fn merge(base: &mut toml::Table, overrides: toml::Table) {
    for (key, value) in overrides {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(inner)), toml::Value::Table(patch)) => merge(inner, patch),
            (_, value) => {
                base.insert(key, value);
            }
        }
    }
}
