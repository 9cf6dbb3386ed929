#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uavcovert_core::units::dbm_to_watts;
use uavcovert_core::{EnvModel, GeometryConstraints, RadioParams, Scenario};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_env(rng: &mut impl Rng) -> EnvModel {
    let xi_los = rng.random_range(-2.5..-2.0);
    EnvModel::new(
        rng.random_range(4.0..12.0),
        rng.random_range(0.1..0.5),
        xi_los,
        xi_los - rng.random_range(0.0..1.0),
    )
    .unwrap()
}

pub fn random_radio(rng: &mut impl Rng) -> RadioParams {
    RadioParams::new(
        dbm_to_watts(-90.0),
        dbm_to_watts(rng.random_range(-70.0..-40.0)),
        rng.random_range(50..500),
        dbm_to_watts(rng.random_range(0.0..20.0)),
        rng.random_range(0.01..0.3),
    )
    .unwrap()
}

/// A random box of the requested scenario.
pub fn random_geometry(rng: &mut impl Rng, scenario: Scenario) -> GeometryConstraints {
    let l = rng.random_range(500.0..10_000.0);
    let theta_min = rng.random_range(std::f64::consts::PI / 16.0..std::f64::consts::PI / 3.0);
    let (c1, c2) = (l * theta_min.cos(), l / theta_min.cos());
    let mut u = |lo: f64, hi: f64| rng.random_range(lo..hi);
    let (d_min, d_max) = match scenario {
        Scenario::S1 => {
            let hi = u(0.3, 0.99) * c1;
            (u(0.1, 0.9) * hi, hi)
        }
        Scenario::S2 => (u(0.3, 0.99) * c1, u(c1, c2)),
        Scenario::S3 => {
            let lo = u(c1, c2);
            (lo, u(lo, c2))
        }
        Scenario::S4 => (u(0.3, 0.99) * c1, u(1.01, 3.0) * c2),
        Scenario::S5 => (u(c1, c2), u(1.01, 3.0) * c2),
        Scenario::S6 => {
            let lo = u(1.01, 2.0) * c2;
            (lo, u(1.1, 2.0) * lo)
        }
    };
    let g = GeometryConstraints::new(l, d_min, d_max, theta_min).unwrap();
    assert_eq!(uavcovert_core::classify_scenario(&g), scenario);
    g
}
