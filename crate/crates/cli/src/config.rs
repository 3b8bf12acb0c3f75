//! Run configurations. Every block rejects unknown keys.

use anyhow::{bail, Context, Result};
use multibath::oracle::SuiteInit;
use multibath::phase_space::DistributionKind;
use multibath::{Reservoir, Schedule};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Reads a JSON config, naming the offending field on failure.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        anyhow::anyhow!("{}: invalid config at `{field}`: {}", path.display(), e.into_inner())
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScheduleConfig {
    // braces so that stray keys are rejected
    Exponential {},
    Constant { g0: f64 },
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self::Exponential {}
    }
}

impl ScheduleConfig {
    pub fn build(&self, gamma: f64) -> Result<Schedule> {
        let s = match *self {
            Self::Exponential {} => Schedule::exponential(gamma),
            Self::Constant { g0 } => Schedule::constant(g0, gamma),
        };
        s.context("schedule")
    }
}

/// Either an explicit list or `count` evenly spaced points from `start` to `stop`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Times {
    List(Vec<f64>),
    Uniform(UniformTimes),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformTimes {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Times {
    pub fn resolve(&self) -> Result<Vec<f64>> {
        let ts = match self {
            Self::List(ts) => ts.clone(),
            Self::Uniform(UniformTimes { start, stop, count }) => match count {
                0 => Vec::new(),
                1 => vec![*start],
                n => (0..*n).map(|i| start + (stop - start) * i as f64 / (n - 1) as f64).collect(),
            },
        };
        if ts.is_empty() {
            bail!("times: the time grid is empty");
        }
        if let Some(bad) = ts.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            bail!("times: {bad} is not a finite non-negative time");
        }
        if let Some(w) = ts.windows(2).find(|w| w[1] <= w[0]) {
            bail!("times: not strictly increasing ({} then {})", w[0], w[1]);
        }
        Ok(ts)
    }
}

/// Exactly one of `nbar` and `theta` (`ω₀/T`) sets the occupation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReservoirConfig {
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nbar: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

pub fn reservoirs(configs: &[ReservoirConfig]) -> Result<Vec<Reservoir>> {
    if configs.is_empty() {
        bail!("reservoirs: at least one reservoir is required");
    }
    configs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let spec = match (r.nbar, r.theta) {
                (Some(n), None) => Reservoir::with_nbar(r.gamma, n),
                (None, Some(th)) => Reservoir::with_theta(r.gamma, th),
                _ => bail!("reservoirs[{i}]: give exactly one of nbar and theta"),
            };
            spec.validate().with_context(|| format!("reservoirs[{i}]"))?;
            Ok(spec)
        })
        .collect()
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub schedule: ScheduleConfig,
    #[serde(default = "one")]
    pub omega0: f64,
    pub reservoirs: Vec<ReservoirConfig>,
    pub init: SuiteInit,
    pub times: Times,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindConfig {
    Husimi,
    Wigner,
    GlauberP,
}

impl From<KindConfig> for DistributionKind {
    fn from(k: KindConfig) -> Self {
        match k {
            KindConfig::Husimi => Self::Husimi,
            KindConfig::Wigner => Self::Wigner,
            KindConfig::GlauberP => Self::GlauberP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub n_re: usize,
    pub n_im: usize,
}

/// Distribution of an initially coherent mode at one time. A missing grid is
/// replaced by the default grid around the Gaussian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseGridConfig {
    #[serde(default)]
    pub schedule: ScheduleConfig,
    #[serde(default = "one")]
    pub omega0: f64,
    pub reservoirs: Vec<ReservoirConfig>,
    pub alpha0: [f64; 2],
    pub t: f64,
    pub kind: KindConfig,
    #[serde(default)]
    pub grid: Option<GridConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurrentConfig {
    #[serde(default)]
    pub schedule: ScheduleConfig,
    pub reservoirs: Vec<ReservoirConfig>,
    pub init: SuiteInit,
    pub times: Times,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TlsBathConfig {
    pub gamma: f64,
    /// Probability of `|+⟩`.
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TlsStateConfig {
    /// Excited population.
    pub a: f64,
    /// Lower-left element `ρ₋₊`.
    #[serde(default)]
    pub c_re: f64,
    #[serde(default)]
    pub c_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TlsConfig {
    #[serde(default)]
    pub schedule: ScheduleConfig,
    #[serde(default = "one")]
    pub omega0: f64,
    pub bath1: TlsBathConfig,
    pub bath2: TlsBathConfig,
    pub initial: TlsStateConfig,
    /// Second initial state for the trace distance and its rate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare: Option<TlsStateConfig>,
    pub times: Times,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatteryOracleConfig {
    pub fock_cutoff: usize,
}

/// `|N⟩` discharging into a cold reservoir under the exponential schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatteryConfig {
    pub n: usize,
    pub gamma: f64,
    pub times: Times,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<BatteryOracleConfig>,
}
