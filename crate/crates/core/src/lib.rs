//! Placement and transmit-power planning for a UAV that must talk to a
//! ground receiver without being detected by a nearby warden.
//!
//! The crate is layered bottom-up:
//!
//! * [`geometry`]: placement coordinates, the LoS S-curve channel and its
//!   derivatives.
//! * [`covertness`]: the KL-divergence covertness constraint and its
//!   inversions in power, angle and height.
//! * [`detection`]: the warden's exact optimal detector and a seeded Monte
//!   Carlo of it, used to validate the bound.
//! * [`solvers`]: bracketed root finding, 1-D / 2-D maximization and the
//!   stationarity conditions of the link gain.
//! * [`planner`]: scenario classification, the case tables and the
//!   reduced-region search.
//!
//! ```
//! use uavcovert_core::{EnvModel, GeometryConstraints, RadioParams, solve_general};
//! use uavcovert_core::units::dbm_to_watts;
//!
//! let env = EnvModel::suburban();
//! let radio = RadioParams::new(dbm_to_watts(-90.0), dbm_to_watts(-60.0), 200, dbm_to_watts(10.0), 0.1)?;
//! let geom = GeometryConstraints::new(10_000.0, 1000.0, 3000.0, std::f64::consts::FRAC_PI_8)?;
//! let plan = solve_general(&env, &radio, &geom)?;
//! assert!(plan.d01 <= radio.budget().d01_cap * (1.0 + 1e-9));
//! # Ok::<(), uavcovert_core::Error>(())
//! ```

pub mod covertness;
pub mod detection;
mod error;
pub mod geometry;
pub mod planner;
pub mod solvers;
pub mod special;
pub mod units;

pub use covertness::{CovertBudget, RadioParams};
pub use detection::DetectionResult;
pub use error::{Error, Result};
pub use geometry::{EnvModel, GeometryConstraints, PolarPlacement};
pub use planner::{
    brute_force_oracle, classify_scenario, heuristic_max_angle, heuristic_nearest, heuristic_solution,
    solve_general, solve_general_with, solve_scenario1, solve_vertical, Constraint, GridSpec, HeuristicKind, PlanSolution,
    RegionPiece, Scenario, SearchOptions,
};
