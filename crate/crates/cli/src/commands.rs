use std::f64::consts::FRAC_PI_2;

use uavcovert_core::covertness::{error_rate_lower_bound, kl_divergence};
use uavcovert_core::detection::{exact_min_error_rate, simulate_detection};
use uavcovert_core::planner::VerticalThresholds;
use uavcovert_core::units::{linear_to_db, watts_to_dbm};
use uavcovert_core::{
    brute_force_oracle, classify_scenario, heuristic_solution, solve_general_with, solve_vertical,
    GeometryConstraints, GridSpec, HeuristicKind, PlanSolution, RadioParams,
};

use crate::config::{GeometryConfig, Problem, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::presets::{preset, Figure};

/// Relative SNR shortfall against the grid oracle tolerated by `--verify`.
pub const VERIFY_TOL: f64 = 1e-3;

pub fn solve(config: &RunConfig) -> Result<PlanSolution, CliError> {
    Ok(match config.problem()? {
        Problem::Planar { env, radio, geom } => solve_general_with(&env, &radio, &geom, &config.search)?,
        Problem::Vertical { env, radio, l, h_min, h_max } => solve_vertical(&env, &radio, h_min, h_max, l)?,
    })
}

fn scenario_label(config: &RunConfig, s: &PlanSolution) -> String {
    match config.geometry {
        GeometryConfig::Planar { .. } => s.scenario.to_string(),
        GeometryConfig::Vertical { .. } => "vertical".to_owned(),
    }
}

fn binding_label(s: &PlanSolution) -> String {
    s.binding_constraints.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

/// One-row table describing a solution.
pub fn solution_table(config: &RunConfig, s: &PlanSolution) -> Table {
    let mut t = Table::new([
        "scenario", "case", "d_w_m", "theta_w_deg", "power_dbm", "snr_db", "d01", "d01_cap", "binding",
    ]);
    t.push(vec![
        scenario_label(config, s).into(),
        s.case_label.clone().into(),
        s.placement.d_w.into(),
        s.placement.theta_w.to_degrees().into(),
        watts_to_dbm(s.power).into(),
        linear_to_db(s.snr).into(),
        s.d01.into(),
        (2.0 * config.radio.epsilon * config.radio.epsilon).into(),
        binding_label(s).into(),
    ]);
    t
}

/// Grid over the whole feasible set; vertical problems collapse the angle
/// axis.
fn oracle_geometry(problem: &Problem) -> (uavcovert_core::EnvModel, RadioParams, GeometryConstraints) {
    match *problem {
        Problem::Planar { env, radio, geom } => (env, radio, geom),
        Problem::Vertical { env, radio, l, h_min, h_max } => {
            (env, radio, GeometryConstraints { l, d_min: h_min, d_max: h_max, theta_min: FRAC_PI_2 })
        }
    }
}

/// Planner against the brute-force grid.
pub struct Verification {
    pub plan: PlanSolution,
    pub oracle: PlanSolution,
    /// `(plan - oracle) / oracle` in SNR; negative means the grid won.
    pub deviation: f64,
}

pub fn verify(config: &RunConfig, grid: GridSpec) -> Result<Verification, CliError> {
    let plan = solve(config)?;
    let (env, radio, geom) = oracle_geometry(&config.problem()?);
    let oracle = brute_force_oracle(&env, &radio, &geom, &grid)?;
    let deviation = (plan.snr - oracle.snr) / oracle.snr;
    Ok(Verification { plan, oracle, deviation })
}

pub fn verification_table(config: &RunConfig, v: &Verification) -> Table {
    let mut t = solution_table(config, &v.plan);
    let oracle = solution_table(config, &v.oracle);
    t.columns.insert(0, "method".into());
    t.rows[0].insert(0, "planner".into());
    let mut row = oracle.rows[0].clone();
    row.insert(0, "grid".into());
    t.push(row);
    t.columns.push("deviation".into());
    t.rows[0].push(v.deviation.into());
    t.rows[1].push(0.0.into());
    t
}

pub fn classify(config: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(["scenario", "c1_m", "c2_m"]);
    match config.problem()? {
        Problem::Planar { geom, .. } => {
            let (c1, c2) = geom.critical_ranges();
            t.push(vec![classify_scenario(&geom).to_string().into(), c1.into(), c2.into()]);
        }
        Problem::Vertical { .. } => t.push(vec!["vertical".into(), f64::NAN.into(), f64::NAN.into()]),
    }
    Ok(t)
}

pub fn sweep(config: &RunConfig) -> Result<Table, CliError> {
    let spec = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::config("sweep", "the sweep command needs a `sweep` section"))?;
    let mut t = Table::new([
        spec.variable.column(),
        "d_w_m",
        "theta_w_deg",
        "power_dbm",
        "snr_db",
        "d01",
        "scenario",
        "case",
    ]);
    for value in spec.points()? {
        let point = config.with(spec.variable, value)?;
        let s = solve(&point)?;
        t.push(vec![
            value.into(),
            s.placement.d_w.into(),
            s.placement.theta_w.to_degrees().into(),
            watts_to_dbm(s.power).into(),
            linear_to_db(s.snr).into(),
            s.d01.into(),
            scenario_label(&point, &s).into(),
            s.case_label.clone().into(),
        ]);
    }
    Ok(t)
}

fn heuristic_snr_db(config: &RunConfig, kind: HeuristicKind) -> Result<f64, CliError> {
    let Problem::Planar { env, radio, geom } = config.problem()? else {
        return Err(CliError::config("geometry.mode", "heuristics need planar geometry"));
    };
    Ok(linear_to_db(heuristic_solution(&env, &radio, &geom, kind)?.snr))
}

fn sweep_points(config: &RunConfig) -> Result<Vec<(RunConfig, f64)>, CliError> {
    let spec = config.sweep.as_ref().expect("figure presets carry a sweep");
    spec.points()?.into_iter().map(|v| Ok((config.with(spec.variable, v)?, v))).collect()
}

pub fn figure(figure: Figure) -> Result<Table, CliError> {
    let base = preset(figure);
    match figure {
        Figure::LocationVsL => {
            let mut t = Table::new([
                "l_m", "scenario", "case", "d_w_m", "theta_w_deg", "ground_m", "height_m", "snr_db", "binding",
            ]);
            for (c, l) in sweep_points(&base)? {
                let s = solve(&c)?;
                let (sin, cos) = s.placement.theta_w.sin_cos();
                t.push(vec![
                    l.into(),
                    s.scenario.to_string().into(),
                    s.case_label.clone().into(),
                    s.placement.d_w.into(),
                    s.placement.theta_w.to_degrees().into(),
                    (s.placement.d_w * cos).into(),
                    (s.placement.d_w * sin).into(),
                    linear_to_db(s.snr).into(),
                    binding_label(&s).into(),
                ]);
            }
            Ok(t)
        }
        Figure::SnrVsEps => {
            let mut t = Table::new([
                "d_max_m", "epsilon", "snr_db_optimal", "snr_db_nearest", "snr_db_max_angle", "case",
            ]);
            // The reference 3 km bound plus the two bounds on either side of
            // the heuristic crossover.
            for d in [3000.0, 3500.0, 2500.0] {
                let with_d = base.with(crate::config::SweepVariable::DMax, d)?;
                for (c, eps) in sweep_points(&with_d)? {
                    let s = solve(&c)?;
                    t.push(vec![
                        d.into(),
                        eps.into(),
                        linear_to_db(s.snr).into(),
                        heuristic_snr_db(&c, HeuristicKind::Nearest)?.into(),
                        heuristic_snr_db(&c, HeuristicKind::MaxAngle)?.into(),
                        s.case_label.clone().into(),
                    ]);
                }
            }
            Ok(t)
        }
        Figure::SnrVsThetaMin => {
            let mut t = Table::new([
                "l_m",
                "theta_min_over_pi",
                "snr_db_optimal",
                "snr_db_nearest",
                "snr_db_max_angle",
                "scenario",
                "case",
            ]);
            for l in [10_000.0, 15_000.0] {
                let with_l = base.with(crate::config::SweepVariable::L, l)?;
                for (c, deg) in sweep_points(&with_l)? {
                    let s = solve(&c)?;
                    t.push(vec![
                        l.into(),
                        (deg / 180.0).into(),
                        linear_to_db(s.snr).into(),
                        heuristic_snr_db(&c, HeuristicKind::Nearest)?.into(),
                        heuristic_snr_db(&c, HeuristicKind::MaxAngle)?.into(),
                        s.scenario.to_string().into(),
                        s.case_label.clone().into(),
                    ]);
                }
            }
            Ok(t)
        }
        Figure::HeightVsEps => {
            let mut t = Table::new([
                "epsilon", "h_opt_m", "h_cov_m", "h_min_m", "h_max_m", "h_star_m", "power_dbm", "snr_db", "case",
            ]);
            for (c, eps) in sweep_points(&base)? {
                let Problem::Vertical { env, radio, l, h_min, h_max } = c.problem()? else {
                    unreachable!("vertical preset");
                };
                let th = VerticalThresholds::compute(&env, &radio, l, h_max)?;
                let s = solve(&c)?;
                t.push(vec![
                    eps.into(),
                    th.h_opt.into(),
                    th.h_cov.into(),
                    h_min.into(),
                    h_max.into(),
                    s.placement.d_w.into(),
                    watts_to_dbm(s.power).into(),
                    linear_to_db(s.snr).into(),
                    s.case_label.clone().into(),
                ]);
            }
            Ok(t)
        }
    }
}

/// Bound-validation report and whether every lattice point respected the
/// bound.
pub struct BoundReport {
    pub table: Table,
    pub min_slack: f64,
}

/// Slack below which the detection-error bound counts as violated.
pub const BOUND_SLACK_TOL: f64 = -1e-9;

/// Exact minimum detection error against the KL lower bound on a
/// `size x size` lattice of blocklength `n in [10, 1000]` and warden SNR
/// `x in [1e-4, 10]`, both log-spaced, with a seeded Monte Carlo estimate at
/// every point when `trials > 0`.
pub fn validate_bound(size: usize, trials: u64, seed: u64) -> Result<BoundReport, CliError> {
    let mut t = Table::new(["n", "x", "d01", "bound", "xi_exact", "xi_mc", "mc_sigma", "slack"]);
    let log_axis = |lo: f64, hi: f64, i: usize| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (size - 1) as f64).exp();
    let mut min_slack = f64::INFINITY;
    for i in 0..size {
        let n = log_axis(10.0, 1000.0, i).round() as u32;
        let radio = RadioParams::new(1.0, 1.0, n, 1.0, 0.5)?;
        for j in 0..size {
            let x = log_axis(1e-4, 10.0, j);
            let d01 = kl_divergence(&radio, x);
            let bound = error_rate_lower_bound(d01);
            let exact = exact_min_error_rate(&radio, x);
            let slack = exact.xi_star - bound;
            min_slack = min_slack.min(slack);
            let (mc, sigma) = if trials > 0 {
                let point_seed = seed.wrapping_add((i * size + j) as u64);
                let sim = simulate_detection(&radio, x, trials, point_seed);
                let xi = exact.xi_star;
                (Cell::Num(sim.xi_star), Cell::Num((xi * (2.0 - xi) / trials as f64).sqrt()))
            } else {
                (Cell::Text(String::new()), Cell::Text(String::new()))
            };
            t.push(vec![(n as f64).into(), x.into(), d01.into(), bound.into(), exact.xi_star.into(), mc, sigma, slack.into()]);
        }
    }
    Ok(BoundReport { table: t, min_slack })
}
