//! Joint placement and power planning.
//!
//! For a fixed placement the receiver SNR is linear in transmit power and
//! the covertness divergence is increasing in it, so the best power is
//! always `min(p_max, max_covert_power)`. That rule reduces every problem
//! here to a search over placements only.
//!
//! * [`solve_scenario1`]: closed-form case table when the whole box lies
//!   well short of the receiver.
//! * [`solve_general`]: any geometry, searching only the reduced region of
//!   its scenario.
//! * [`solve_vertical`]: height-only placement above the warden.
//! * [`heuristic_nearest`], [`heuristic_max_angle`]: baselines.
//! * [`brute_force_oracle`]: exhaustive grid used for validation.

mod heuristics;
mod oracle;
mod scenario;
mod search;
mod vertical;

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::covertness::{invert_kl_in_received_power, kl_divergence, RadioParams};
use crate::error::Result;
use crate::geometry::{bob_link_gain, willie_path_gain, EnvModel, PolarPlacement};

pub use heuristics::{heuristic_max_angle, heuristic_nearest, heuristic_solution, HeuristicKind};
pub use oracle::{brute_force_oracle, GridSpec};
pub use scenario::{classify_scenario, reduced_region, RegionPiece, Scenario};
pub use search::{solve_general, solve_general_with, solve_scenario1, SearchOptions};
pub use vertical::{solve_vertical, VerticalThresholds};

/// Tolerance used when reporting which constraints are active.
pub const BINDING_TOL: f64 = 1e-9;

/// A constraint of the planning problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    Covertness,
    MaxPower,
    MinRange,
    MaxRange,
    MinAngle,
    MaxAngle,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::Covertness => "covertness",
            Constraint::MaxPower => "max_power",
            Constraint::MinRange => "min_range",
            Constraint::MaxRange => "max_range",
            Constraint::MinAngle => "min_angle",
            Constraint::MaxAngle => "max_angle",
        })
    }
}

/// Optimal (or heuristic) placement and power with its figures of merit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSolution {
    pub placement: PolarPlacement,
    /// Transmit power, watts.
    pub power: f64,
    /// Receiver SNR, linear.
    pub snr: f64,
    /// KL divergence at the warden, nats.
    pub d01: f64,
    pub scenario: Scenario,
    pub case_label: String,
    pub binding_constraints: BTreeSet<Constraint>,
}

/// Placement box in warden-centred coordinates. The vertical problem is the
/// box with `theta_min = pi/2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bounds {
    pub d_min: f64,
    pub d_max: f64,
    pub theta_min: f64,
}

/// Environment, radio and receiver distance with the covertness inversion
/// computed once.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Objective {
    pub env: EnvModel,
    pub radio: RadioParams,
    pub l: f64,
    /// Warden signal power at which the covertness budget is exhausted.
    pub p_bar_cap: f64,
}

impl Objective {
    pub fn new(env: &EnvModel, radio: &RadioParams, l: f64) -> Result<Self> {
        env.validate()?;
        radio.validate()?;
        let p_bar_cap = invert_kl_in_received_power(radio, &radio.budget())?;
        Ok(Self { env: *env, radio: *radio, l, p_bar_cap })
    }

    /// `min(p_max, max_covert_power)` at `p`.
    pub fn power_at(&self, p: &PolarPlacement) -> f64 {
        self.radio.p_max.min(self.p_bar_cap / willie_path_gain(&self.env, p))
    }

    /// Receiver SNR under the power rule; `None` on the receiver itself.
    pub fn snr_at(&self, p: &PolarPlacement) -> Option<f64> {
        let gain = bob_link_gain(&self.env, p, self.l).ok()?;
        Some(self.power_at(p) * gain / self.radio.sigma2_b)
    }

    /// SNR at `(d_w, theta_w)`, `-inf` where undefined. For use as a search
    /// objective.
    pub fn score(&self, d_w: f64, theta_w: f64) -> f64 {
        self.snr_at(&PolarPlacement { d_w, theta_w }).unwrap_or(f64::NEG_INFINITY)
    }

    /// Packages `p` at explicit `power` into a solution record.
    pub fn solution_with_power(
        &self,
        p: PolarPlacement,
        power: f64,
        bounds: &Bounds,
        scenario: Scenario,
        case_label: impl Into<String>,
    ) -> Result<PlanSolution> {
        let snr = power * bob_link_gain(&self.env, &p, self.l)? / self.radio.sigma2_b;
        let d01 = kl_divergence(&self.radio, power * willie_path_gain(&self.env, &p));
        let cap = self.radio.budget().d01_cap;
        let mut binding = BTreeSet::new();
        if d01 >= cap * (1.0 - BINDING_TOL) {
            binding.insert(Constraint::Covertness);
        }
        if power >= self.radio.p_max * (1.0 - BINDING_TOL) {
            binding.insert(Constraint::MaxPower);
        }
        if (p.d_w - bounds.d_min).abs() <= BINDING_TOL * bounds.d_min {
            binding.insert(Constraint::MinRange);
        }
        if (p.d_w - bounds.d_max).abs() <= BINDING_TOL * bounds.d_max {
            binding.insert(Constraint::MaxRange);
        }
        if bounds.theta_min < FRAC_PI_2 {
            if (p.theta_w - bounds.theta_min).abs() <= BINDING_TOL {
                binding.insert(Constraint::MinAngle);
            }
            if (p.theta_w - FRAC_PI_2).abs() <= BINDING_TOL {
                binding.insert(Constraint::MaxAngle);
            }
        }
        Ok(PlanSolution {
            placement: p,
            power,
            snr,
            d01,
            scenario,
            case_label: case_label.into(),
            binding_constraints: binding,
        })
    }

    /// Like [`Self::solution_with_power`] with the power rule applied.
    pub fn solution(
        &self,
        p: PolarPlacement,
        bounds: &Bounds,
        scenario: Scenario,
        case_label: impl Into<String>,
    ) -> Result<PlanSolution> {
        self.solution_with_power(p, self.power_at(&p), bounds, scenario, case_label)
    }
}

impl From<&crate::geometry::GeometryConstraints> for Bounds {
    fn from(g: &crate::geometry::GeometryConstraints) -> Self {
        Self { d_min: g.d_min, d_max: g.d_max, theta_min: g.theta_min }
    }
}

/// Best transmit power at a fixed placement: `min(p_max, max_covert_power)`.
pub fn optimal_power(env: &EnvModel, radio: &RadioParams, p: &PolarPlacement) -> Result<f64> {
    Ok(Objective::new(env, radio, 1.0)?.power_at(p))
}
