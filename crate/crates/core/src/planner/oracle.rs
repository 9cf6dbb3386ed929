use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::scenario::classify_scenario;
use super::{Bounds, Objective, PlanSolution};
use crate::covertness::RadioParams;
use crate::error::{invalid, Error, Result};
use crate::geometry::{EnvModel, GeometryConstraints, PolarPlacement};

/// Resolution of the exhaustive grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_d: usize,
    pub n_theta: usize,
}

impl GridSpec {
    pub fn new(n_d: usize, n_theta: usize) -> Result<Self> {
        if n_d < 2 {
            return Err(invalid("grid.n_d", format!("need at least 2 points, got {n_d}")));
        }
        if n_theta < 2 {
            return Err(invalid("grid.n_theta", format!("need at least 2 points, got {n_theta}")));
        }
        Ok(Self { n_d, n_theta })
    }

    /// Spacing of the grid over `geom` as `(metres, radians)`.
    pub fn cell(&self, geom: &GeometryConstraints) -> (f64, f64) {
        (
            (geom.d_max - geom.d_min) / (self.n_d - 1) as f64,
            (FRAC_PI_2 - geom.theta_min) / (self.n_theta - 1) as f64,
        )
    }
}

/// Best grid point of the whole box, endpoints included, with the optimal
/// power at every point. Ties go to the lowest linear index
/// `i_d * n_theta + i_theta`. A collapsed axis is scanned at a single value.
///
/// The geometry is not re-validated here so that collapsed boxes
/// (`d_min == d_max`) can be probed.
pub fn brute_force_oracle(
    env: &EnvModel,
    radio: &RadioParams,
    geom: &GeometryConstraints,
    grid: &GridSpec,
) -> Result<PlanSolution> {
    GridSpec::new(grid.n_d, grid.n_theta)?;
    let obj = Objective::new(env, radio, geom.l)?;
    let n_d = if geom.d_max > geom.d_min { grid.n_d } else { 1 };
    let n_t = if FRAC_PI_2 > geom.theta_min { grid.n_theta } else { 1 };
    let at = |lo: f64, hi: f64, n: usize, i: usize| {
        if n == 1 || i + 1 == n {
            if n == 1 { lo } else { hi }
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    };
    let mut best: Option<(PolarPlacement, f64)> = None;
    for i in 0..n_d {
        let d_w = at(geom.d_min, geom.d_max, n_d, i);
        for j in 0..n_t {
            let theta_w = at(geom.theta_min, FRAC_PI_2, n_t, j);
            let value = obj.score(d_w, theta_w);
            if value.is_finite() && best.is_none_or(|(_, v)| value > v) {
                best = Some((PolarPlacement { d_w, theta_w }, value));
            }
        }
    }
    let (p, _) = best.ok_or_else(|| Error::Infeasible("every grid point is degenerate".into()))?;
    obj.solution(p, &Bounds::from(geom), classify_scenario(geom), "grid search")
}
