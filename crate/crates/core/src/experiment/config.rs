//! Experiment configuration and its TOML file form.
//!
//! ```toml
//! [experiment]
//! mode = "double_delayed_choice"
//! pair_rate_scale = 1.0
//!
//! [experiment.geometry]
//! d = 1.0e-4
//! lambda = 7.02e-7
//! f = 1.0
//! L = 0.02
//! n_bins = 256
//!
//! [experiment.envelope]
//! kind = "uniform"            # or kind = "gaussian", sigma = 0.004
//!
//! [experiment.babu]
//! tap_p = 0.5
//! splitter = true
//! theta = 0.7853981633974483
//! chi = 0.0
//!
//! [experiment.alisha]
//! tap_p = 0.5
//! splitter = true
//! theta = 0.7853981633974483
//! chi = 0.0
//!
//! [experiment.schedule]
//! bits = [1, 0, 1, 1]
//! block_size = 10000          # defaults to ceil(2 L / d)
//! ```

use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::rates::nyquist_min_samples;
use super::schedule::SwitchSchedule;
use crate::error::{Error, Result};
use crate::quantum::{unitary_from_angle, Apparatus, ArmOptics, Envelope, Mode, SlitScreenGeometry};

fn default_tap() -> f64 {
    0.5
}

fn default_true() -> bool {
    true
}

fn default_theta() -> f64 {
    std::f64::consts::FRAC_PI_4
}

fn default_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct ArmFields {
    #[serde(default = "default_tap")]
    tap_p: f64,
    #[serde(default = "default_true")]
    splitter: bool,
    #[serde(default = "default_theta")]
    theta: f64,
    #[serde(default)]
    chi: f64,
}

/// File form of one arm. The splitter is stored by angle,
/// `alpha = cos(theta)`, `beta = sin(theta) e^{i chi}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ArmFields", into = "ArmFields")]
pub struct ArmSettings {
    pub tap_p: f64,
    pub splitter: bool,
    pub theta: f64,
    pub chi: f64,
}

impl TryFrom<ArmFields> for ArmSettings {
    type Error = Error;

    fn try_from(f: ArmFields) -> Result<Self> {
        ArmSettings::new(f.tap_p, f.splitter, f.theta, f.chi)
    }
}

impl From<ArmSettings> for ArmFields {
    fn from(a: ArmSettings) -> Self {
        ArmFields {
            tap_p: a.tap_p,
            splitter: a.splitter,
            theta: a.theta,
            chi: a.chi,
        }
    }
}

impl Default for ArmSettings {
    fn default() -> Self {
        Self {
            tap_p: default_tap(),
            splitter: true,
            theta: default_theta(),
            chi: 0.0,
        }
    }
}

impl ArmSettings {
    pub fn new(tap_p: f64, splitter: bool, theta: f64, chi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tap_p) {
            return Err(Error::TapProbability(tap_p));
        }
        if !(theta.is_finite() && chi.is_finite()) {
            return Err(Error::Geometry(format!("splitter angles must be finite, got theta={theta}, chi={chi}")));
        }
        Ok(Self {
            tap_p,
            splitter,
            theta,
            chi,
        })
    }

    pub fn optics(&self) -> ArmOptics {
        ArmOptics::new(self.tap_p, self.splitter, unitary_from_angle(self.theta, self.chi))
            .expect("validated on construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleSettings {
    pub bits: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ExperimentFields {
    mode: Mode,
    #[serde(default = "default_scale")]
    pair_rate_scale: f64,
    geometry: SlitScreenGeometry,
    #[serde(default)]
    envelope: Envelope,
    #[serde(default)]
    babu: ArmSettings,
    #[serde(default)]
    alisha: ArmSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schedule: Option<ScheduleSettings>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExperimentFields", into = "ExperimentFields")]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// Scales simulated inter-triple spacing only.
    pub pair_rate_scale: f64,
    pub geometry: SlitScreenGeometry,
    pub envelope: Envelope,
    pub babu: ArmSettings,
    /// Ignored in single delayed-choice mode.
    pub alisha: ArmSettings,
    pub schedule: Option<ScheduleSettings>,
}

impl TryFrom<ExperimentFields> for ExperimentConfig {
    type Error = Error;

    fn try_from(f: ExperimentFields) -> Result<Self> {
        let cfg = ExperimentConfig {
            mode: f.mode,
            pair_rate_scale: f.pair_rate_scale,
            geometry: f.geometry,
            envelope: f.envelope,
            babu: f.babu,
            alisha: f.alisha,
            schedule: f.schedule,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl From<ExperimentConfig> for ExperimentFields {
    fn from(c: ExperimentConfig) -> Self {
        ExperimentFields {
            mode: c.mode,
            pair_rate_scale: c.pair_rate_scale,
            geometry: c.geometry,
            envelope: c.envelope,
            babu: c.babu,
            alisha: c.alisha,
            schedule: c.schedule,
        }
    }
}

impl ExperimentConfig {
    /// Balanced splitters on both arms, half tap, uniform envelope.
    pub fn balanced(mode: Mode, geometry: SlitScreenGeometry) -> Self {
        Self {
            mode,
            pair_rate_scale: 1.0,
            geometry,
            envelope: Envelope::Uniform,
            babu: ArmSettings::default(),
            alisha: ArmSettings::default(),
            schedule: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.pair_rate_scale.is_finite() && self.pair_rate_scale > 0.0) {
            return Err(Error::Geometry(format!(
                "pair_rate_scale must be strictly positive, got {}",
                self.pair_rate_scale
            )));
        }
        self.envelope.validate()?;
        if let Some(s) = &self.schedule {
            if let Some(bad) = s.bits.iter().find(|&&b| b > 1) {
                return Err(Error::Schedule(format!("bits must be 0 or 1, got {bad}")));
            }
            if s.block_size == Some(0) {
                return Err(Error::Schedule("block_size must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn apparatus(&self) -> Result<Apparatus> {
        Apparatus::new(
            self.mode,
            self.geometry,
            self.envelope,
            self.babu.optics(),
            self.alisha.optics(),
        )
    }

    /// The configured schedule; the block size falls back to the sampling
    /// bound of the geometry.
    pub fn switch_schedule(&self) -> Option<SwitchSchedule> {
        self.schedule.as_ref().map(|s| SwitchSchedule {
            bits: s.bits.clone(),
            block_size: s.block_size.unwrap_or_else(|| nyquist_min_samples(&self.geometry)),
        })
    }

    pub fn with_schedule(mut self, schedule: &SwitchSchedule) -> Self {
        self.schedule = Some(ScheduleSettings {
            bits: schedule.bits.clone(),
            block_size: Some(schedule.block_size),
        });
        self
    }

    /// Canonical TOML for this configuration.
    pub fn to_toml(&self) -> String {
        toml::to_string(&ConfigFile { experiment: self.clone() }).expect("config serialises")
    }

    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str::<ConfigFile>(text).map(|f| f.experiment)
    }

    /// Short SHA-256 digest of the canonical TOML form.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_toml().as_bytes());
        hex::encode(&hash[..8])
    }

    /// Reads a config file, reporting parse failures with a line number.
    pub fn load(path: &FsPath) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        Self::from_toml(&text).map_err(|e| {
            let line = e
                .span()
                .map(|span| text[..span.start.min(text.len())].matches('\n').count() + 1)
                .unwrap_or(1);
            Error::Parse {
                path: path.to_path_buf(),
                line,
                message: e.message().to_string(),
            }
        })
    }
}

/// Top-level file layout: everything lives under `[experiment]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub experiment: ExperimentConfig,
}
