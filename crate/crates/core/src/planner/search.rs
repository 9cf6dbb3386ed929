use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::scenario::{classify_scenario, reduced_region, RegionPiece, Scenario};
use super::{Bounds, Objective, PlanSolution};
use crate::covertness::{covert_angle_threshold, d01_at, AngleThreshold, RadioParams};
use crate::error::{Error, Result};
use crate::geometry::{EnvModel, GeometryConstraints, PolarPlacement};
use crate::solvers::{maximize_1d, maximize_2d, optimal_angle_given_range};

/// Search resolution for the reduced-region planner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    /// Grid points along range in two-dimensional pieces.
    pub grid_d: usize,
    /// Grid points along the normalized angle in two-dimensional pieces.
    pub grid_theta: usize,
    /// Refinement rounds after the grid.
    pub refine_iterations: usize,
    /// Scan intervals before golden-section search in one-dimensional pieces.
    pub scan: usize,
    /// Relative tolerance on the free coordinate of one-dimensional pieces.
    pub tol_rel: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { grid_d: 256, grid_theta: 256, refine_iterations: 50, scan: 64, tol_rel: 1e-10 }
    }
}

/// Closed-form solution for scenario-1 boxes.
///
/// The optimum sits on the outer arc `d_w = d_max`. With `theta_o` the
/// unconstrained best angle on that arc:
///
/// | case | condition                                      | placement            | power   |
/// |------|------------------------------------------------|----------------------|---------|
/// | A    | `theta_o < theta_min`, full power covert there | `theta_min`          | `p_max` |
/// | B    | `theta_o < theta_min`, otherwise               | `theta_min`          | cap     |
/// | C    | full power covert at `theta_o`                 | `theta_o`            | `p_max` |
/// | D    | otherwise                                      | 1-D search           | cap     |
///
/// Case D searches `[max(theta_min, theta_eps), theta_o]`, where
/// `theta_eps` is the angle at which full power exhausts the budget.
pub fn solve_scenario1(env: &EnvModel, radio: &RadioParams, geom: &GeometryConstraints) -> Result<PlanSolution> {
    solve_scenario1_with(env, radio, geom, &SearchOptions::default())
}

pub(crate) fn solve_scenario1_with(
    env: &EnvModel,
    radio: &RadioParams,
    geom: &GeometryConstraints,
    opts: &SearchOptions,
) -> Result<PlanSolution> {
    geom.validate()?;
    let scenario = classify_scenario(geom);
    if scenario != Scenario::S1 {
        return Err(Error::Infeasible(format!("closed-form solution needs scenario S1, box is {scenario}")));
    }
    let obj = Objective::new(env, radio, geom.l)?;
    let bounds = Bounds::from(geom);
    let budget = radio.budget();
    let d = geom.d_max;
    let theta_o = optimal_angle_given_range(env, geom.l, d)?;
    let full_power_covert = |theta: f64| {
        d01_at(env, radio, &PolarPlacement { d_w: d, theta_w: theta }, radio.p_max) <= budget.d01_cap
    };

    if theta_o < geom.theta_min {
        let p = PolarPlacement { d_w: d, theta_w: geom.theta_min };
        return if full_power_covert(geom.theta_min) {
            obj.solution_with_power(p, radio.p_max, &bounds, scenario, "Case A")
        } else {
            obj.solution(p, &bounds, scenario, "Case B")
        };
    }
    if full_power_covert(theta_o) {
        let p = PolarPlacement { d_w: d, theta_w: theta_o };
        return obj.solution_with_power(p, radio.p_max, &bounds, scenario, "Case C");
    }
    let theta_eps = match covert_angle_threshold(env, radio, d, &budget)? {
        AngleThreshold::Interior(t) => t,
        AngleThreshold::NoneFeasible => 0.0,
        AngleThreshold::AllFeasible => FRAC_PI_2,
    };
    let lo = geom.theta_min.max(theta_eps).min(theta_o);
    let best = maximize_1d(|t| obj.score(d, t), lo, theta_o, opts.scan, opts.tol_rel);
    obj.solution(PolarPlacement { d_w: d, theta_w: best.x }, &bounds, scenario, "Case D")
}

/// Optimal placement and power for any box.
///
/// Scenario-1 boxes use [`solve_scenario1`]; others are searched piece by
/// piece over [`reduced_region`], the first piece winning ties.
pub fn solve_general(env: &EnvModel, radio: &RadioParams, geom: &GeometryConstraints) -> Result<PlanSolution> {
    solve_general_with(env, radio, geom, &SearchOptions::default())
}

/// [`solve_general`] with explicit search resolution.
pub fn solve_general_with(
    env: &EnvModel,
    radio: &RadioParams,
    geom: &GeometryConstraints,
    opts: &SearchOptions,
) -> Result<PlanSolution> {
    geom.validate()?;
    let scenario = classify_scenario(geom);
    if scenario == Scenario::S1 {
        return solve_scenario1_with(env, radio, geom, opts);
    }
    let obj = Objective::new(env, radio, geom.l)?;
    let bounds = Bounds::from(geom);
    let mut best: Option<(PolarPlacement, f64, &'static str)> = None;
    for piece in reduced_region(scenario, geom) {
        let (p, value, label) = search_piece(&obj, &piece, opts);
        if best.is_none_or(|(_, v, _)| value > v) {
            best = Some((p, value, label));
        }
    }
    let (p, value, label) = best.expect("every scenario has at least one piece");
    if !value.is_finite() {
        return Err(Error::Infeasible(format!("no admissible placement in scenario {scenario}")));
    }
    obj.solution(p, &bounds, scenario, label)
}

fn search_piece(obj: &Objective, piece: &RegionPiece, opts: &SearchOptions) -> (PolarPlacement, f64, &'static str) {
    match *piece {
        RegionPiece::ConstRangeArc { d_w, theta_lo, theta_hi } => {
            let m = maximize_1d(|t| obj.score(d_w, t), theta_lo, theta_hi, opts.scan, opts.tol_rel);
            (PolarPlacement { d_w, theta_w: m.x }, m.value, "range arc")
        }
        RegionPiece::ConstAngleSegment { theta_w, d_lo, d_hi } => {
            let m = maximize_1d(|d| obj.score(d, theta_w), d_lo, d_hi, opts.scan, opts.tol_rel);
            (PolarPlacement { d_w: m.x, theta_w }, m.value, "min-angle segment")
        }
        RegionPiece::AboveBobRegion { .. } => {
            // Search in (d, s) with theta = theta_lo(d) + s (theta_hi(d) - theta_lo(d)),
            // which maps the curved region onto a rectangle.
            let angle = |d: f64, s: f64| {
                let (lo, hi) = piece.theta_range_at(d);
                lo + s * (hi - lo)
            };
            let (d_lo, d_hi) = piece.d_range();
            let m = maximize_2d(
                |d, s| obj.score(d, angle(d, s)),
                (d_lo, d_hi),
                (0.0, 1.0),
                (opts.grid_d, opts.grid_theta),
                opts.refine_iterations,
            );
            (PolarPlacement { d_w: m.x, theta_w: angle(m.x, m.y) }, m.value, "above-receiver region")
        }
    }
}
