mod common;

use rand::Rng;
use uavcovert_core::geometry::{bob_link_gain, dgain_dangle, dgain_drange};
use uavcovert_core::{EnvModel, PolarPlacement};

/// Central difference with one Richardson extrapolation step.
fn derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let central = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * central(h / 2.0) - central(h)) / 3.0
}

struct Point {
    env: EnvModel,
    l: f64,
    p: PolarPlacement,
}

/// Random placements at least 2 % of `L` away from the kink above the
/// receiver.
fn points(seed: u64, count: usize) -> Vec<Point> {
    let mut rng = common::rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let env = common::random_env(&mut rng);
        let l = rng.random_range(500.0..10_000.0);
        let p = PolarPlacement { d_w: l * rng.random_range(0.1..3.0), theta_w: rng.random_range(0.01..1.56) };
        let (x, _) = p.ground_offsets(l);
        if x.abs() > 0.02 * l {
            out.push(Point { env, l, p });
        }
    }
    out
}

fn relative_error(analytic: f64, numeric: f64, scale: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(scale)
}

#[test]
fn range_derivative_matches_finite_differences() {
    let mut worst = 0.0f64;
    for Point { env, l, p } in points(1, 1000) {
        let f = |d: f64| bob_link_gain(&env, &PolarPlacement { d_w: d, ..p }, l).unwrap();
        let numeric = derivative(f, p.d_w, 1e-3 * p.d_w);
        let analytic = dgain_drange(&env, &p, l).unwrap();
        // Near a stationary point only an absolute comparison makes sense.
        let scale = 1e-6 * f(p.d_w) / p.d_w;
        worst = worst.max(relative_error(analytic, numeric, scale));
    }
    assert!(worst < 1e-6, "worst relative error {worst:e}");
}

#[test]
fn angle_derivative_matches_finite_differences() {
    let mut worst = 0.0f64;
    for Point { env, l, p } in points(2, 1000) {
        let f = |t: f64| bob_link_gain(&env, &PolarPlacement { theta_w: t, ..p }, l).unwrap();
        let numeric = derivative(f, p.theta_w, 1e-4);
        let analytic = dgain_dangle(&env, &p, l).unwrap();
        let scale = 1e-6 * f(p.theta_w);
        worst = worst.max(relative_error(analytic, numeric, scale));
    }
    assert!(worst < 1e-6, "worst relative error {worst:e}");
}
