//! JSON run configuration.

use serde::{Deserialize, Serialize};
use uavcovert_core::units::{db_to_linear, dbm_to_watts};
use uavcovert_core::{EnvModel, GeometryConstraints, RadioParams, SearchOptions};

use crate::error::CliError;

/// A power or noise level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Power {
    Dbm(f64),
    /// Decibels relative to one watt.
    Db(f64),
    Watts(f64),
}

impl Power {
    pub fn watts(self) -> f64 {
        match self {
            Power::Dbm(v) => dbm_to_watts(v),
            Power::Db(v) => db_to_linear(v),
            Power::Watts(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Angle {
    Deg(f64),
    Rad(f64),
}

impl Angle {
    pub fn radians(self) -> f64 {
        match self {
            Angle::Deg(v) => v.to_radians(),
            Angle::Rad(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioConfig {
    pub p_max: Power,
    pub sigma2_b: Power,
    pub sigma2_w: Power,
    pub n: u32,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometryConfig {
    Planar { l: f64, d_min: f64, d_max: f64, theta_min: Angle },
    Vertical { l: f64, h_min: f64, h_max: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Epsilon,
    L,
    DMin,
    DMax,
    HMin,
    HMax,
    ThetaMinDeg,
    PMaxDbm,
    N,
}

impl SweepVariable {
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Epsilon => "epsilon",
            SweepVariable::L => "l",
            SweepVariable::DMin => "d_min",
            SweepVariable::DMax => "d_max",
            SweepVariable::HMin => "h_min",
            SweepVariable::HMax => "h_max",
            SweepVariable::ThetaMinDeg => "theta_min_deg",
            SweepVariable::PMaxDbm => "p_max_dbm",
            SweepVariable::N => "n",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    #[serde(default)]
    pub from: Option<f64>,
    #[serde(default)]
    pub to: Option<f64>,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub scale: Scale,
    /// Explicit list; takes precedence over `from`/`to`/`steps`.
    #[serde(default)]
    pub values: Option<Vec<f64>>,
}

impl SweepConfig {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        if let Some(values) = &self.values {
            if values.is_empty() {
                return Err(CliError::config("sweep.values", "must not be empty"));
            }
            return Ok(values.clone());
        }
        let from = self.from.ok_or_else(|| CliError::config("sweep.from", "required without sweep.values"))?;
        let to = self.to.ok_or_else(|| CliError::config("sweep.to", "required without sweep.values"))?;
        let steps = self.steps.ok_or_else(|| CliError::config("sweep.steps", "required without sweep.values"))?;
        if steps < 1 {
            return Err(CliError::config("sweep.steps", "must be at least 1"));
        }
        if self.scale == Scale::Log && !(from > 0.0 && to > 0.0) {
            return Err(CliError::config("sweep.scale", "log sweeps need positive endpoints"));
        }
        if steps == 1 {
            return Ok(vec![from]);
        }
        Ok((0..steps)
            .map(|i| {
                if i == 0 {
                    return from;
                }
                if i == steps - 1 {
                    return to;
                }
                let t = i as f64 / (steps - 1) as f64;
                match self.scale {
                    Scale::Linear => from + t * (to - from),
                    Scale::Log => (from.ln() + t * (to.ln() - from.ln())).exp(),
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Option<crate::output::Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "EnvModel::suburban")]
    pub env: EnvModel,
    pub radio: RadioConfig,
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub search: SearchOptions,
    #[serde(default)]
    pub output: Option<OutputConfig>,
}

/// A validated single-point problem.
#[derive(Debug, Clone, Copy)]
pub enum Problem {
    Planar { env: EnvModel, radio: RadioParams, geom: GeometryConstraints },
    Vertical { env: EnvModel, radio: RadioParams, l: f64, h_min: f64, h_max: f64 },
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn problem(&self) -> Result<Problem, CliError> {
        self.env.validate()?;
        let r = &self.radio;
        let radio =
            RadioParams::new(r.sigma2_b.watts(), r.sigma2_w.watts(), r.n, r.p_max.watts(), r.epsilon)?;
        Ok(match self.geometry {
            GeometryConfig::Planar { l, d_min, d_max, theta_min } => Problem::Planar {
                env: self.env,
                radio,
                geom: GeometryConstraints::new(l, d_min, d_max, theta_min.radians())?,
            },
            GeometryConfig::Vertical { l, h_min, h_max } => {
                if !(h_min > 0.0 && h_max > h_min && l > 0.0) {
                    return Err(CliError::config(
                        "geometry",
                        format!("vertical mode needs 0 < h_min < h_max and l > 0, got h_min {h_min}, h_max {h_max}, l {l}"),
                    ));
                }
                Problem::Vertical { env: self.env, radio, l, h_min, h_max }
            }
        })
    }

    /// Copy with the sweep variable set to `value`.
    pub fn with(&self, variable: SweepVariable, value: f64) -> Result<Self, CliError> {
        let mut c = self.clone();
        let mismatch = |mode: &str| {
            CliError::config("sweep.variable", format!("`{}` does not apply to {mode} geometry", variable.column()))
        };
        match (variable, &mut c.geometry) {
            (SweepVariable::Epsilon, _) => c.radio.epsilon = value,
            (SweepVariable::PMaxDbm, _) => c.radio.p_max = Power::Dbm(value),
            (SweepVariable::N, _) => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                    return Err(CliError::config("sweep", format!("n must be a positive integer, got {value}")));
                }
                c.radio.n = value as u32;
            }
            (SweepVariable::L, GeometryConfig::Planar { l, .. } | GeometryConfig::Vertical { l, .. }) => *l = value,
            (SweepVariable::DMin, GeometryConfig::Planar { d_min, .. }) => *d_min = value,
            (SweepVariable::DMax, GeometryConfig::Planar { d_max, .. }) => *d_max = value,
            (SweepVariable::ThetaMinDeg, GeometryConfig::Planar { theta_min, .. }) => *theta_min = Angle::Deg(value),
            (SweepVariable::HMin, GeometryConfig::Vertical { h_min, .. }) => *h_min = value,
            (SweepVariable::HMax, GeometryConfig::Vertical { h_max, .. }) => *h_max = value,
            (_, GeometryConfig::Planar { .. }) => return Err(mismatch("planar")),
            (_, GeometryConfig::Vertical { .. }) => return Err(mismatch("vertical")),
        }
        Ok(c)
    }
}
