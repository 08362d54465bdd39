//! Scenario configuration.
//!
//! A scenario is a TOML document whose top-level keys are exactly the
//! scenario fields. Units: meters, watts, seconds, bits; the noise density
//! `channel.noise_psd_N0` is in dBm/Hz. `modes` is either a path to a mode
//! table file (resolved relative to the scenario file) or an inline array of
//! mode records.
//!
//! ```toml
//! base_pos = [0.0, 0.0]
//! sense_traj = [[100.0, 40.0], [100.0, 30.0]]
//! router_start = [50.0, 20.0]
//! dt = 10.0
//! data_D = 1e8
//! eps_target = 0.01
//! p_max = 4.0
//! horizon = 2
//! modes = "modes.toml"
//!
//! [channel]
//! ref_gain_K0 = 1.0
//! ref_dist_d0 = 5.7
//! pathloss_exp_beta = 3.68
//! noise_psd_N0 = -100.0
//! bandwidth_B = 20e6
//!
//! [motion]
//! k1 = 7.4
//! k2 = 0.29
//! v_max = 1.0
//!
//! [grid]
//! x_min = 0.0
//! x_max = 110.0
//! y_min = 0.0
//! y_max = 60.0
//! spacing = 2.0
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::channel::{watt_to_dbm, ChannelParams, ModeRecord, ModeTable};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::motion::MotionParams;
use crate::planner::Grid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    #[serde(rename = "ref_gain_K0")]
    pub ref_gain_k0: f64,
    pub ref_dist_d0: f64,
    pub pathloss_exp_beta: f64,
    /// dBm/Hz
    #[serde(rename = "noise_psd_N0")]
    pub noise_psd_n0_dbm: f64,
    #[serde(rename = "bandwidth_B")]
    pub bandwidth_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModesConfig {
    File(String),
    Inline(Vec<ModeRecord>),
}

/// On-disk shape of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub base_pos: Point,
    pub sense_traj: Vec<Point>,
    pub router_start: Point,
    pub dt: f64,
    #[serde(rename = "data_D")]
    pub data_d: f64,
    pub eps_target: f64,
    pub p_max: f64,
    pub horizon: usize,
    pub modes: ModesConfig,
    pub channel: ChannelConfig,
    pub motion: MotionParams,
    pub grid: Grid,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub base_pos: Point,
    pub sense_traj: Vec<Point>,
    pub router_start: Point,
    pub dt: f64,
    pub data_d: f64,
    pub eps_target: f64,
    pub p_max: f64,
    pub channel: ChannelParams,
    pub modes: ModeTable,
    pub motion: MotionParams,
    pub grid: Grid,
    pub horizon: usize,
}

pub const DEFAULT_SCENARIO: &str = include_str!("../../scenarios/default.toml");

fn check_positive(field: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite and > 0, got {v}")))
    }
}

fn check_point(field: &str, p: &Point) -> Result<()> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, "coordinates must be finite"))
    }
}

impl Scenario {
    /// Parses a scenario whose mode table is inline. A `modes` path is an
    /// error here; use [`Scenario::from_toml_with`] or [`Scenario::load`].
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Self::from_toml_with(text, |path| {
            Err(Error::invalid(
                "modes",
                format!("cannot resolve mode file `{path}` without a base directory"),
            ))
        })
    }

    /// Parses a scenario, resolving a `modes` file reference through
    /// `resolve`, which returns the referenced file's text.
    pub fn from_toml_with<F>(text: &str, resolve: F) -> Result<Self>
    where
        F: FnOnce(&str) -> Result<String>,
    {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| Error::Config(format!("scenario: {e}")))?;
        let modes = match &file.modes {
            ModesConfig::Inline(records) => ModeTable::from_records(records)?,
            ModesConfig::File(path) => ModeTable::from_toml_str(&resolve(path)?)?,
        };
        Self::from_parts(file, modes)
    }

    /// Reads a scenario file; a `modes` path is resolved relative to it.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_toml_with(&text, |rel| Ok(std::fs::read_to_string(dir.join(rel))?))
    }

    /// The shipped default scenario.
    pub fn default_scenario() -> Self {
        Self::from_toml_with(DEFAULT_SCENARIO, |_| Ok(crate::channel::DEFAULT_MODE_TABLE.to_string()))
            .expect("shipped default scenario is valid")
    }

    fn from_parts(file: ScenarioFile, modes: ModeTable) -> Result<Self> {
        let c = &file.channel;
        if !c.noise_psd_n0_dbm.is_finite() {
            return Err(Error::invalid("channel.noise_psd_N0", "must be finite"));
        }
        let channel = ChannelParams::with_noise_dbm_per_hz(
            c.ref_gain_k0,
            c.ref_dist_d0,
            c.pathloss_exp_beta,
            c.noise_psd_n0_dbm,
            c.bandwidth_b,
        )
        .map_err(|e| match e {
            Error::Invalid { field, reason } => Error::Invalid {
                field: format!("channel.{field}"),
                reason,
            },
            other => other,
        })?;
        let s = Scenario {
            base_pos: file.base_pos,
            sense_traj: file.sense_traj,
            router_start: file.router_start,
            dt: file.dt,
            data_d: file.data_d,
            eps_target: file.eps_target,
            p_max: file.p_max,
            channel,
            modes,
            motion: file.motion,
            grid: file.grid,
            horizon: file.horizon,
        };
        s.validate()?;
        Ok(s)
    }

    /// Checks every scenario invariant, naming the offending field.
    pub fn validate(&self) -> Result<()> {
        check_point("base_pos", &self.base_pos)?;
        check_point("router_start", &self.router_start)?;
        for (i, p) in self.sense_traj.iter().enumerate() {
            check_point(&format!("sense_traj[{i}]"), p)?;
        }
        if self.sense_traj.is_empty() {
            return Err(Error::invalid("sense_traj", "needs at least one position"));
        }
        if self.horizon != self.sense_traj.len() {
            return Err(Error::invalid(
                "horizon",
                format!(
                    "must equal the length of sense_traj ({}), got {}",
                    self.sense_traj.len(),
                    self.horizon
                ),
            ));
        }
        check_positive("dt", self.dt)?;
        check_positive("data_D", self.data_d)?;
        check_positive("p_max", self.p_max)?;
        if !(self.eps_target > 0.0 && self.eps_target < 1.0) {
            return Err(Error::invalid(
                "eps_target",
                format!("must be in (0,1), got {}", self.eps_target),
            ));
        }
        self.motion.validate()?;
        self.grid.validate()?;
        if !self.grid.contains(&self.router_start) {
            return Err(Error::invalid("router_start", "must lie inside the grid bounds"));
        }
        Ok(())
    }

    /// Canonical on-disk form with the mode table inlined.
    pub fn to_file(&self) -> ScenarioFile {
        ScenarioFile {
            base_pos: self.base_pos,
            sense_traj: self.sense_traj.clone(),
            router_start: self.router_start,
            dt: self.dt,
            data_d: self.data_d,
            eps_target: self.eps_target,
            p_max: self.p_max,
            horizon: self.horizon,
            modes: ModesConfig::Inline(self.modes.to_records()),
            channel: ChannelConfig {
                ref_gain_k0: self.channel.ref_gain_k0(),
                ref_dist_d0: self.channel.ref_dist_d0(),
                pathloss_exp_beta: self.channel.pathloss_exp_beta(),
                noise_psd_n0_dbm: watt_to_dbm(self.channel.noise_psd_n0()),
                bandwidth_b: self.channel.bandwidth_b(),
            },
            motion: self.motion,
            grid: self.grid,
        }
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.to_file()).expect("scenario serializes")
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn content_hash(&self) -> String {
        let canon = serde_json::to_vec(&self.to_file()).expect("scenario serializes");
        Sha256::digest(&canon)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn with_motion(mut self, motion: MotionParams) -> Self {
        self.motion = motion;
        self
    }

    /// Replaces the sensing trajectory and keeps `horizon` in step with it.
    pub fn with_sense_traj(mut self, traj: Vec<Point>) -> Self {
        self.horizon = traj.len();
        self.sense_traj = traj;
        self
    }
}
