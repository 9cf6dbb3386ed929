//! One-dimensional root finding and maximization.
//!
//! Every root the planner needs is the sign change of a function that is
//! strictly monotone on a known bracket, so plain bisection is used
//! throughout. The three location solvers below characterize the
//! unconstrained maximizer of the receiver link gain along one coordinate
//! with the other held fixed.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::{g_over_abs_offset, los_probability, EnvModel, PolarPlacement};

pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Relative residual tolerance the location solvers guarantee.
pub const LOCATION_RESIDUAL_TOL: f64 = 1e-10;

/// Angles within this distance of `pi/2` are handled by the vertical
/// fixed-point form, since `L / cos(theta)` blows up there.
pub const NEAR_VERTICAL: f64 = 1e-6;

const DEG_PER_RAD: f64 = 180.0 / PI;

/// A closed search interval with its stopping tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    /// Stop once the interval is narrower than `tol_rel * max(1, |x|)`.
    pub tol_rel: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi, tol_rel: 1e-15 }
    }

    pub fn with_tol(mut self, tol_rel: f64) -> Self {
        self.tol_rel = tol_rel;
        self
    }
}

/// Bisection on a bracket with `f(lo) * f(hi) <= 0`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, bracket: &Bracket) -> Result<f64> {
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    if !(lo < hi) || !(bracket.tol_rel > 0.0) {
        return Err(Error::InvalidParameter {
            field: "bracket",
            reason: format!("need lo < hi and tol_rel > 0, got [{lo}, {hi}] tol {}", bracket.tol_rel),
        });
    }
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::BracketSign { lo, hi, f_lo, f_hi });
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= bracket.tol_rel * mid.abs().max(1.0) || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence { what: "bisection", iterations: MAX_BISECTION_ITERATIONS })
}

/// Grows `[lo, hi]` by doubling `hi` until `f` changes sign, then bisects.
/// `f(lo)` must be strictly non-positive or strictly non-negative.
pub fn bisect_expanding<F: Fn(f64) -> f64>(f: F, lo: f64, mut hi: f64, tol_rel: f64) -> Result<f64> {
    let f_lo = f(lo);
    let mut f_hi = f(hi);
    let mut doublings = 0;
    while f_hi.signum() == f_lo.signum() && f_hi != 0.0 {
        if doublings == 1100 || !hi.is_finite() {
            return Err(Error::BracketSign { lo, hi, f_lo, f_hi });
        }
        hi *= 2.0;
        f_hi = f(hi);
        doublings += 1;
    }
    bisect(f, &Bracket::new(lo, hi).with_tol(tol_rel))
}

/// Maximum of a function over `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Maximizes `f` on `[lo, hi]`: a uniform scan with `scan` intervals picks
/// the best cell, then golden-section search refines it until the cell is
/// narrower than `tol_rel * max(|x|, scale)`. Ties go to the lowest x.
///
/// The scan makes the search robust to mild non-unimodality; with a
/// unimodal `f` the result is the exact maximizer to tolerance.
pub fn maximize_1d<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, scan: usize, tol_rel: f64) -> Maximum {
    if !(hi > lo) {
        return Maximum { x: lo, value: f(lo) };
    }
    let scan = scan.max(2);
    let step = (hi - lo) / scan as f64;
    let point = |i: usize| if i == scan { hi } else { lo + step * i as f64 };
    let mut best = Maximum { x: lo, value: f(lo) };
    let mut best_i = 0;
    for i in 1..=scan {
        let x = point(i);
        let value = f(x);
        if value > best.value {
            best = Maximum { x, value };
            best_i = i;
        }
    }
    let (mut a, mut b) = (point(best_i.saturating_sub(1)), point((best_i + 1).min(scan)));
    let scale = (hi - lo).max(lo.abs()).max(hi.abs());
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..300 {
        if b - a <= tol_rel * scale {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    for (x, value) in [(c, fc), (d, fd)] {
        if value > best.value {
            best = Maximum { x, value };
        }
    }
    best
}

/// Maximum of a function over a rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum2 {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

fn axis(lo: f64, hi: f64, n: usize) -> impl Fn(usize) -> f64 {
    let last = n.max(1) - 1;
    move |i| if i == last { hi } else { lo + (hi - lo) * i as f64 / last.max(1) as f64 }
}

/// Maximizes `f(x, y)` over `[x_lo, x_hi] x [y_lo, y_hi]`.
///
/// An `nx x ny` grid (endpoints included, a single point on a collapsed
/// axis) picks the starting cell, ties going to the lowest linear index
/// `i * ny + j`. Up to `iterations` rounds of golden-section line searches
/// then refine it, each round searching along both axes and along the net
/// displacement of the previous round so that the search can follow
/// diagonal ridges. Line searches span one grid cell either side.
pub fn maximize_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (x_lo, x_hi): (f64, f64),
    (y_lo, y_hi): (f64, f64),
    (nx, ny): (usize, usize),
    iterations: usize,
) -> Maximum2 {
    let nx = if x_hi > x_lo { nx.max(2) } else { 1 };
    let ny = if y_hi > y_lo { ny.max(2) } else { 1 };
    let (gx, gy) = (axis(x_lo, x_hi, nx), axis(y_lo, y_hi, ny));
    let mut best = Maximum2 { x: gx(0), y: gy(0), value: f64::NEG_INFINITY };
    for i in 0..nx {
        let x = gx(i);
        for j in 0..ny {
            let y = gy(j);
            let value = f(x, y);
            if value > best.value {
                best = Maximum2 { x, y, value };
            }
        }
    }
    if !best.value.is_finite() {
        return best;
    }
    let cell_x = (x_hi - x_lo) / (nx.max(2) - 1) as f64;
    let cell_y = (y_hi - y_lo) / (ny.max(2) - 1) as f64;
    let clamp = |v: f64, lo: f64, hi: f64| v.max(lo).min(hi);
    let mut drift = (0.0, 0.0);
    for _ in 0..iterations {
        let start = best;
        let mut directions = vec![(cell_x, 0.0), (0.0, cell_y)];
        if drift != (0.0, 0.0) {
            directions.push(drift);
        }
        for (dx, dy) in directions {
            if dx == 0.0 && dy == 0.0 {
                continue;
            }
            // Largest step range along (dx, dy) that stays inside the box.
            let limit = |v: f64, d: f64, lo: f64, hi: f64| -> (f64, f64) {
                if d > 0.0 {
                    ((lo - v) / d, (hi - v) / d)
                } else if d < 0.0 {
                    ((hi - v) / d, (lo - v) / d)
                } else {
                    (f64::NEG_INFINITY, f64::INFINITY)
                }
            };
            let (ax, bx) = limit(best.x, dx, x_lo, x_hi);
            let (ay, by) = limit(best.y, dy, y_lo, y_hi);
            let (s_lo, s_hi) = (ax.max(ay).max(-1.0), bx.min(by).min(1.0));
            if !(s_hi > s_lo) {
                continue;
            }
            let origin = best;
            let line = |s: f64| {
                f(clamp(origin.x + s * dx, x_lo, x_hi), clamp(origin.y + s * dy, y_lo, y_hi))
            };
            let m = maximize_1d(line, s_lo, s_hi, 8, 1e-12);
            if m.value > best.value {
                best = Maximum2 {
                    x: clamp(origin.x + m.x * dx, x_lo, x_hi),
                    y: clamp(origin.y + m.x * dy, y_lo, y_hi),
                    value: m.value,
                };
            }
        }
        drift = (best.x - start.x, best.y - start.y);
        if best.value - start.value <= 1e-15 * start.value.abs() {
            break;
        }
    }
    best
}

/// Residual of the range condition at fixed angle:
/// `xi_los (d_w - L cos theta) + (180 b L sin theta / pi) (1 - p_b)`.
pub fn range_residual(env: &EnvModel, l: f64, theta_w: f64, d_w: f64) -> f64 {
    let p = PolarPlacement { d_w, theta_w };
    let (x, y) = p.ground_offsets(l);
    let p_b = los_probability(env, y.atan2(x.abs()));
    env.xi_los * (d_w - l * theta_w.cos()) + DEG_PER_RAD * env.b * l * theta_w.sin() * (1.0 - p_b)
}

/// Residual of the angle condition at fixed range:
/// `xi_los L sin theta + (180 b / pi) G(theta) / |L - d_w cos theta| (1 - p_b)`.
///
/// The same expression serves both `d_w <= L` and `d_w > L`; only the
/// bracket differs between the two cases.
pub fn angle_residual(env: &EnvModel, l: f64, d_w: f64, theta_w: f64) -> f64 {
    let p = PolarPlacement { d_w, theta_w };
    let (x, y) = p.ground_offsets(l);
    let p_b = los_probability(env, y.atan2(x.abs()));
    env.xi_los * l * theta_w.sin() + DEG_PER_RAD * env.b * g_over_abs_offset(d_w, theta_w, l) * (1.0 - p_b)
}

/// Residual of the vertical fixed point
/// `h + (180 b L / (pi xi_los)) (1 - p(arctan(h / L)))`.
pub fn height_residual(env: &EnvModel, l: f64, h: f64) -> f64 {
    h + DEG_PER_RAD * env.b * l / env.xi_los * (1.0 - los_probability(env, (h / l).atan()))
}

/// Bracket in which the range maximizer lies for a fixed angle.
pub fn range_bracket(l: f64, theta_w: f64) -> (f64, f64) {
    let cos = theta_w.cos();
    (l * cos, l / cos)
}

/// Bracket in which the angle maximizer lies for a fixed range.
pub fn angle_bracket(l: f64, d_w: f64) -> (f64, f64) {
    (0.0, (d_w.min(l) / d_w.max(l)).acos())
}

fn check_residual(what: &'static str, residual: f64, scale: f64) -> Result<()> {
    let tolerance = LOCATION_RESIDUAL_TOL * scale;
    if residual.abs() > tolerance {
        return Err(Error::Residual { what, residual, tolerance });
    }
    Ok(())
}

/// Range from the warden that maximizes the receiver link gain at a fixed
/// elevation angle.
///
/// The maximizer lies in `[L cos theta, L / cos theta]`. If the gain is still
/// rising at the upper end (only possible when the S-curve is far from
/// saturated at 90 degrees) the maximum sits on the kink directly above the
/// receiver and the upper end is returned.
pub fn optimal_range_given_angle(env: &EnvModel, l: f64, theta_w: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta_w) {
        return Err(Error::InvalidParameter {
            field: "theta_w",
            reason: format!("must lie in [0, pi/2], got {theta_w}"),
        });
    }
    if theta_w == 0.0 {
        return Ok(l);
    }
    if theta_w > FRAC_PI_2 - NEAR_VERTICAL {
        return optimal_height_unconstrained(env, l);
    }
    let (lo, hi) = range_bracket(l, theta_w);
    let residual = |d: f64| range_residual(env, l, theta_w, d);
    if residual(hi) >= 0.0 {
        return Ok(hi);
    }
    let root = bisect(residual, &Bracket::new(lo, hi))?;
    // Terms of the residual are O(L * theta); scale the check accordingly.
    check_residual("range condition", residual(root), l * theta_w.sin().max(1e-3))?;
    Ok(root)
}

/// Elevation angle that maximizes the receiver link gain at a fixed range.
///
/// The maximizer lies in `[0, arccos(d_w / L)]` for `d_w <= L` and in
/// `[0, arccos(L / d_w)]` otherwise; the two brackets meet at `0` when
/// `d_w == L`.
pub fn optimal_angle_given_range(env: &EnvModel, l: f64, d_w: f64) -> Result<f64> {
    if !(d_w.is_finite() && d_w > 0.0) {
        return Err(Error::InvalidParameter { field: "d_w", reason: format!("must be positive, got {d_w}") });
    }
    let (lo, hi) = angle_bracket(l, d_w);
    if hi <= 0.0 {
        return Ok(0.0);
    }
    let residual = |t: f64| angle_residual(env, l, d_w, t);
    if residual(hi) >= 0.0 {
        return Ok(hi);
    }
    let root = bisect(residual, &Bracket::new(lo, hi))?;
    check_residual("angle condition", residual(root), l)?;
    Ok(root)
}

/// Height above the warden that maximizes the receiver link gain, i.e. the
/// fixed point of `h = -(180 b L / (pi xi_los)) (1 - p(arctan(h / L)))`.
/// It does not depend on transmit power or receiver noise.
pub fn optimal_height_unconstrained(env: &EnvModel, l: f64) -> Result<f64> {
    let residual = |h: f64| height_residual(env, l, h);
    let root = bisect_expanding(residual, 0.0, l, 1e-15)?;
    check_residual("height fixed point", residual(root), root.max(1.0))?;
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::bob_link_gain;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn bisect_examples() {
        assert_relative_eq!(bisect(|x| x - 1.0, &Bracket::new(0.0, 2.0)).unwrap(), 1.0, epsilon = 1e-14);
        assert!(bisect(|x| x * x * x, &Bracket::new(-1.0, 2.0)).unwrap().abs() < 1e-14);
        assert!(matches!(bisect(|x| x * x + 1.0, &Bracket::new(-1.0, 1.0)), Err(Error::BracketSign { .. })));
        assert!(bisect(|x| x, &Bracket::new(1.0, 1.0)).is_err());
    }

    proptest! {
        #[test]
        fn bisect_residual_contract(root in -5.0f64..5.0, slope in 0.1f64..10.0, cubic in 0.0f64..3.0) {
            let f = |x: f64| slope * (x - root) + cubic * (x - root).powi(3);
            let tol = 1e-12;
            let x = bisect(f, &Bracket::new(-10.0, 10.0).with_tol(tol)).unwrap();
            prop_assert!((x - root).abs() <= tol * x.abs().max(1.0));
        }
    }

    #[test]
    fn maximize_1d_finds_interior_and_edge_peaks() {
        let m = maximize_1d(|x| -(x - 0.3).powi(2), 0.0, 1.0, 16, 1e-12);
        assert_relative_eq!(m.x, 0.3, epsilon = 1e-9);
        let m = maximize_1d(|x| x, 0.0, 1.0, 16, 1e-12);
        assert_eq!(m.x, 1.0);
        let m = maximize_1d(|x| -x, 2.0, 2.0, 16, 1e-12);
        assert_eq!(m.x, 2.0);
    }

    #[test]
    fn range_solver_edge_cases() {
        let env = EnvModel::suburban();
        let l = 10_000.0;
        assert_eq!(optimal_range_given_angle(&env, l, 0.0).unwrap(), l);
        for &theta in &[0.05, 0.4, 0.9, 1.4] {
            let d = optimal_range_given_angle(&env, l, theta).unwrap();
            let (lo, hi) = range_bracket(l, theta);
            assert!(d >= lo && d <= hi);
            assert!(range_residual(&env, l, theta, d).abs() < 1e-10 * l);
        }
        // Near vertical switches to the height fixed point.
        let near = optimal_range_given_angle(&env, l, FRAC_PI_2 - 1e-7).unwrap();
        assert_eq!(near, optimal_height_unconstrained(&env, l).unwrap());
    }

    #[test]
    fn angle_solver_edge_cases() {
        let env = EnvModel::suburban();
        let l = 10_000.0;
        assert_eq!(optimal_angle_given_range(&env, l, l).unwrap(), 0.0);
        for &d in &[1500.0, 3000.0, 9000.0, 11_000.0, 30_000.0] {
            let t = optimal_angle_given_range(&env, l, d).unwrap();
            let (_, hi) = angle_bracket(l, d);
            assert!(t > 0.0 && t <= hi, "d = {d}: {t} not in (0, {hi}]");
        }
    }

    #[test]
    fn angle_residual_positive_at_zero() {
        let env = EnvModel::suburban();
        for &d in &[500.0, 9999.0, 10_001.0, 40_000.0] {
            assert!(angle_residual(&env, 10_000.0, d, 0.0) > 0.0);
        }
    }

    #[test]
    fn height_regression_and_power_independence() {
        let env = EnvModel { xi_los: -3.0, xi_nlos: -3.0, ..EnvModel::suburban() };
        let h = optimal_height_unconstrained(&env, 1000.0).unwrap();
        // 50-digit bisection of the fixed point: 291.75252655231228688
        assert_relative_eq!(h, 291.752_526_552_312_3, max_relative = 1e-12);
    }

    #[test]
    fn height_scales_with_receiver_distance() {
        let env = EnvModel { xi_los: -3.0, xi_nlos: -3.0, ..EnvModel::suburban() };
        let h1 = optimal_height_unconstrained(&env, 1000.0).unwrap();
        let h3 = optimal_height_unconstrained(&env, 3000.0).unwrap();
        // Independent recomputation with a plain fixed-point sweep.
        let brute = |l: f64| {
            let mut best = (f64::MIN, 0.0);
            for i in 1..=200_000 {
                let h = l * i as f64 / 100_000.0;
                let g = bob_link_gain(&env, &PolarPlacement::vertical(h), l).unwrap();
                if g > best.0 {
                    best = (g, h);
                }
            }
            best.1
        };
        assert!((h3 - brute(3000.0)).abs() <= 3000.0 * 2.0 / 100_000.0);
        // The fixed point is homogeneous in (h, L).
        assert_relative_eq!(h3, 3.0 * h1, max_relative = 1e-12);
    }
}
