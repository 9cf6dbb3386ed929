use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::scenario::classify_scenario;
use super::{Bounds, Objective, PlanSolution};
use crate::covertness::RadioParams;
use crate::error::{Error, Result};
use crate::geometry::{EnvModel, GeometryConstraints, PolarPlacement};
use crate::solvers::maximize_2d;

const GRID: usize = 128;
const REFINE: usize = 50;

/// Baseline placement rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicKind {
    /// Closest point of the box to the receiver.
    Nearest,
    /// Point of the box with the highest elevation seen from the receiver.
    MaxAngle,
}

/// Feasible placement closest to the receiver.
pub fn heuristic_nearest(geom: &GeometryConstraints) -> Result<PolarPlacement> {
    geom.validate()?;
    let l = geom.l;
    let m = maximize_2d(
        |d, t| {
            let (x, y) = PolarPlacement { d_w: d, theta_w: t }.ground_offsets(l);
            -x.hypot(y)
        },
        (geom.d_min, geom.d_max),
        (geom.theta_min, FRAC_PI_2),
        (GRID, GRID),
        REFINE,
    );
    if -m.value <= 1e-12 * l {
        return Err(Error::DegenerateGeometry);
    }
    Ok(PolarPlacement { d_w: m.x, theta_w: m.y })
}

/// Feasible placement with the highest elevation seen from the receiver.
///
/// When the box reaches the locus directly above the receiver every point
/// on it attains `pi/2`; the lowest such point is returned.
pub fn heuristic_max_angle(geom: &GeometryConstraints) -> Result<PolarPlacement> {
    geom.validate()?;
    let l = geom.l;
    let (_, c2) = geom.critical_ranges();
    if c2 <= geom.d_max {
        let d_w = geom.d_min.max(c2);
        return Ok(PolarPlacement { d_w, theta_w: (l / d_w).min(1.0).acos().max(geom.theta_min) });
    }
    let m = maximize_2d(
        |d, t| {
            let (x, y) = PolarPlacement { d_w: d, theta_w: t }.ground_offsets(l);
            y.atan2(x.abs())
        },
        (geom.d_min, geom.d_max),
        (geom.theta_min, FRAC_PI_2),
        (GRID, GRID),
        REFINE,
    );
    Ok(PolarPlacement { d_w: m.x, theta_w: m.y })
}

/// Heuristic placement with the optimal power for it.
pub fn heuristic_solution(
    env: &EnvModel,
    radio: &RadioParams,
    geom: &GeometryConstraints,
    kind: HeuristicKind,
) -> Result<PlanSolution> {
    let (p, label) = match kind {
        HeuristicKind::Nearest => (heuristic_nearest(geom)?, "nearest heuristic"),
        HeuristicKind::MaxAngle => (heuristic_max_angle(geom)?, "max-angle heuristic"),
    };
    let obj = Objective::new(env, radio, geom.l)?;
    obj.solution(p, &Bounds::from(geom), classify_scenario(geom), label)
}
