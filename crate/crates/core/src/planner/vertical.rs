use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::scenario::Scenario;
use super::{Bounds, Objective, PlanSolution};
use crate::covertness::{covert_height_threshold, max_covert_power, RadioParams};
use crate::error::{invalid, Error, Result};
use crate::geometry::{EnvModel, PolarPlacement};
use crate::solvers::optimal_height_unconstrained;

/// The three quantities the vertical case table branches on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerticalThresholds {
    /// Height maximizing the receiver link gain, ignoring covertness.
    pub h_opt: f64,
    /// Height at which full power exactly meets the covertness budget.
    pub h_cov: f64,
    /// Largest covert power at `h_max`.
    pub p_top: f64,
}

impl VerticalThresholds {
    pub fn compute(env: &EnvModel, radio: &RadioParams, l: f64, h_max: f64) -> Result<Self> {
        let budget = radio.budget();
        Ok(Self {
            h_opt: optimal_height_unconstrained(env, l)?,
            h_cov: covert_height_threshold(env, radio, &budget)?,
            p_top: max_covert_power(env, radio, &PolarPlacement::vertical(h_max), &budget)?,
        })
    }
}

/// Optimal height and power for a UAV hovering directly above the warden.
///
/// With `h_opt` the unconstrained best height and `h_cov` the height where
/// full power meets the budget:
///
/// | case | condition                                  | height  | power      |
/// |------|--------------------------------------------|---------|------------|
/// | 1    | `h_opt <= h_min`, `h_cov <= h_min`          | `h_min` | `p_max`    |
/// | 2    | `h_min < h_cov < h_max`, `h_opt < h_cov`    | `h_cov` | `p_max`    |
/// | 3    | `h_cov >= h_max`                           | `h_max` | cap at top |
/// | 4    | `h_min < h_opt < h_max`, `h_cov < h_opt`    | `h_opt` | `p_max`    |
/// | 5    | `h_opt >= h_max`, `h_cov <= h_max`          | `h_max` | `p_max`    |
///
/// Cases are tried in the order 1, 3, 2, 4, 5. The only gap left by the
/// strict inequalities, `h_opt == h_cov` strictly inside the range, falls
/// back to case 2 (both formulas give the same point there).
pub fn solve_vertical(env: &EnvModel, radio: &RadioParams, h_min: f64, h_max: f64, l: f64) -> Result<PlanSolution> {
    if !(h_min.is_finite() && h_min > 0.0) {
        return Err(invalid("geometry.h_min", format!("must be positive, got {h_min}")));
    }
    if !(h_max.is_finite() && h_max > h_min) {
        return Err(invalid("geometry.h_max", format!("must exceed h_min = {h_min}, got {h_max}")));
    }
    if !(l.is_finite() && l > 0.0) {
        return Err(invalid("geometry.l", format!("must be positive, got {l}")));
    }
    let obj = Objective::new(env, radio, l)?;
    let t = VerticalThresholds::compute(env, radio, l, h_max)?;
    let (h_opt, h_cov) = (t.h_opt, t.h_cov);
    let p_m = radio.p_max;

    let (h, power, case) = if h_opt <= h_min && h_cov <= h_min {
        (h_min, p_m, 1)
    } else if h_cov >= h_max {
        (h_max, t.p_top, 3)
    } else if h_min < h_cov && h_cov < h_max && h_opt < h_cov {
        (h_cov, p_m, 2)
    } else if h_min < h_opt && h_opt < h_max && h_cov < h_opt {
        (h_opt, p_m, 4)
    } else if h_opt >= h_max && h_cov <= h_max {
        (h_max, p_m, 5)
    } else if h_opt == h_cov && h_min < h_cov && h_cov < h_max {
        (h_cov, p_m, 2)
    } else {
        return Err(Error::UncoveredCase { h_opt, h_cov });
    };
    let bounds = Bounds { d_min: h_min, d_max: h_max, theta_min: FRAC_PI_2 };
    obj.solution_with_power(PolarPlacement::vertical(h), power, &bounds, Scenario::S3, format!("Case {case}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::dbm_to_watts;

    fn env() -> EnvModel {
        EnvModel::new(4.88, 0.429, -3.0, -3.0).unwrap()
    }

    fn radio(epsilon: f64) -> RadioParams {
        RadioParams::new(dbm_to_watts(-90.0), dbm_to_watts(-40.0), 200, dbm_to_watts(10.0), epsilon).unwrap()
    }

    #[test]
    fn case_three_five_boundary_is_continuous() {
        let r0 = radio(0.1);
        let h_max = VerticalThresholds::compute(&env(), &r0, 1000.0, 500.0).unwrap().h_cov;
        // h_cov does not depend on L; a distant receiver puts h_opt above h_max.
        let l = 4000.0;
        let t = VerticalThresholds::compute(&env(), &r0, l, h_max).unwrap();
        assert!(t.h_opt > h_max);
        let at = solve_vertical(&env(), &r0, 100.0, h_max, l).unwrap();
        let inside = solve_vertical(&env(), &r0, 100.0, h_max * (1.0 + 1e-9), l).unwrap();
        assert_eq!(at.case_label, "Case 3");
        assert_eq!(inside.case_label, "Case 5");
        assert!((at.power / r0.p_max - 1.0).abs() < 1e-9);
        assert!((at.snr / inside.snr - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cases_follow_the_budget() {
        let labels: Vec<String> = [1e-3, 0.01, 0.05, 0.3]
            .iter()
            .map(|&e| solve_vertical(&env(), &radio(e), 100.0, 500.0, 1000.0).unwrap().case_label)
            .collect();
        assert_eq!(labels.first().unwrap(), "Case 3");
        assert_eq!(labels.last().unwrap(), "Case 4");
    }

    #[test]
    fn rejects_bad_heights() {
        assert!(matches!(
            solve_vertical(&env(), &radio(0.1), 200.0, 100.0, 1000.0),
            Err(Error::InvalidParameter { field: "geometry.h_max", .. })
        ));
    }
}
