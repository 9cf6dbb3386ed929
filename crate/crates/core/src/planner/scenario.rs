use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::geometry::{GeometryConstraints, PolarPlacement};

/// Ordering of the range box relative to `L cos theta_min` and
/// `L / cos theta_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scenario {
    /// The whole box is short of the receiver's foot at the minimum angle.
    S1,
    S2,
    S3,
    S4,
    S5,
    /// The whole box is beyond the point above the receiver at the minimum
    /// angle.
    S6,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4, Scenario::S5, Scenario::S6];
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Classifies a box. Patterns are tried in order and boundary equalities go
/// to the lowest-numbered match.
pub fn classify_scenario(geom: &GeometryConstraints) -> Scenario {
    let (c1, c2) = geom.critical_ranges();
    let (lo, hi) = (geom.d_min, geom.d_max);
    if hi <= c1 {
        Scenario::S1
    } else if lo <= c1 && hi <= c2 {
        Scenario::S2
    } else if c1 <= lo && hi <= c2 {
        Scenario::S3
    } else if lo <= c1 {
        Scenario::S4
    } else if lo <= c2 {
        Scenario::S5
    } else {
        Scenario::S6
    }
}

/// One piece of the region that is guaranteed to contain an optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RegionPiece {
    /// Fixed range, angle in `[theta_lo, theta_hi]`.
    ConstRangeArc { d_w: f64, theta_lo: f64, theta_hi: f64 },
    /// Fixed angle, range in `[d_lo, d_hi]`.
    ConstAngleSegment { theta_w: f64, d_lo: f64, d_hi: f64 },
    /// Range in `[d_lo, d_hi]` (all beyond `L / cos theta_min`), angle from
    /// `theta_min` up to the locus `arccos(L / d)` directly above the
    /// receiver.
    AboveBobRegion { l: f64, theta_min: f64, d_lo: f64, d_hi: f64 },
}

impl RegionPiece {
    /// Angle bounds of the piece at range `d` (clamped into the piece).
    pub fn theta_range_at(&self, d: f64) -> (f64, f64) {
        match *self {
            RegionPiece::ConstRangeArc { theta_lo, theta_hi, .. } => (theta_lo, theta_hi),
            RegionPiece::ConstAngleSegment { theta_w, .. } => (theta_w, theta_w),
            RegionPiece::AboveBobRegion { l, theta_min, d_lo, d_hi } => {
                let d = d.clamp(d_lo, d_hi);
                (theta_min, (l / d).min(1.0).acos().max(theta_min))
            }
        }
    }

    /// Range bounds of the piece.
    pub fn d_range(&self) -> (f64, f64) {
        match *self {
            RegionPiece::ConstRangeArc { d_w, .. } => (d_w, d_w),
            RegionPiece::ConstAngleSegment { d_lo, d_hi, .. } | RegionPiece::AboveBobRegion { d_lo, d_hi, .. } => {
                (d_lo, d_hi)
            }
        }
    }

    /// True if `p` is within `tol_d` metres and `tol_theta` radians of the
    /// piece.
    pub fn contains(&self, p: &PolarPlacement, tol_d: f64, tol_theta: f64) -> bool {
        let (d_lo, d_hi) = self.d_range();
        if p.d_w < d_lo - tol_d || p.d_w > d_hi + tol_d {
            return false;
        }
        // The angle envelope widens with d for the above-receiver piece, so
        // the most permissive range inside the slack decides.
        let (t_lo, _) = self.theta_range_at(p.d_w);
        let (_, t_hi) = self.theta_range_at(p.d_w + tol_d);
        p.theta_w >= t_lo - tol_theta && p.theta_w <= t_hi + tol_theta
    }

    /// `n x n` lattice of placements covering the piece (fewer on collapsed
    /// axes).
    pub fn sample(&self, n: usize) -> Vec<PolarPlacement> {
        let n = n.max(2);
        let (d_lo, d_hi) = self.d_range();
        let lerp = |lo: f64, hi: f64, i: usize| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let d_w = lerp(d_lo, d_hi, i);
            let (t_lo, t_hi) = self.theta_range_at(d_w);
            for j in 0..n {
                out.push(PolarPlacement { d_w, theta_w: lerp(t_lo, t_hi, j) });
            }
        }
        out
    }
}

/// Pieces of the box that contain an optimum for the given scenario.
pub fn reduced_region(scenario: Scenario, geom: &GeometryConstraints) -> Vec<RegionPiece> {
    let (c1, c2) = geom.critical_ranges();
    let theta = geom.theta_min;
    let segment = |d_lo: f64, d_hi: f64| RegionPiece::ConstAngleSegment { theta_w: theta, d_lo, d_hi };
    let above = |d_lo: f64| RegionPiece::AboveBobRegion { l: geom.l, theta_min: theta, d_lo, d_hi: geom.d_max };
    match scenario {
        Scenario::S1 => {
            let theta_hi = (geom.d_max / geom.l).min(1.0).acos().max(theta).min(FRAC_PI_2);
            vec![RegionPiece::ConstRangeArc { d_w: geom.d_max, theta_lo: theta, theta_hi }]
        }
        Scenario::S2 => vec![segment(c1, geom.d_max)],
        Scenario::S3 => vec![segment(geom.d_min, geom.d_max)],
        Scenario::S4 => vec![segment(c1, c2), above(c2)],
        Scenario::S5 => vec![segment(geom.d_min, c2), above(c2)],
        Scenario::S6 => vec![above(geom.d_min)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_6;

    fn geom(l: f64, d_min: f64, d_max: f64) -> GeometryConstraints {
        GeometryConstraints::new(l, d_min, d_max, FRAC_PI_6).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_scenario(&geom(10_000.0, 1000.0, 3000.0)), Scenario::S1);
        assert_eq!(classify_scenario(&geom(500.0, 1000.0, 3000.0)), Scenario::S6);
        let l = 10_000.0;
        let c1 = l * FRAC_PI_6.cos();
        assert_eq!(classify_scenario(&geom(l, 1000.0, c1)), Scenario::S1);
    }

    #[test]
    fn every_scenario_is_reachable() {
        // c1 = 866, c2 = 1155 at L = 1000.
        let cases = [
            (500.0, 800.0, Scenario::S1),
            (500.0, 1000.0, Scenario::S2),
            (900.0, 1100.0, Scenario::S3),
            (500.0, 2000.0, Scenario::S4),
            (900.0, 2000.0, Scenario::S5),
            (1200.0, 2000.0, Scenario::S6),
        ];
        for (lo, hi, want) in cases {
            assert_eq!(classify_scenario(&geom(1000.0, lo, hi)), want, "box [{lo}, {hi}]");
        }
    }

    #[test]
    fn pieces_stay_inside_the_box() {
        for (lo, hi) in [(500.0, 800.0), (500.0, 1000.0), (900.0, 1100.0), (500.0, 2000.0), (900.0, 2000.0), (1200.0, 2000.0)] {
            let g = geom(1000.0, lo, hi);
            let s = classify_scenario(&g);
            for piece in reduced_region(s, &g) {
                let (d_lo, d_hi) = piece.d_range();
                assert!(d_lo <= d_hi);
                for p in piece.sample(17) {
                    assert!(g.contains(&p, 1e-12), "{s}: {p:?} outside the box");
                    assert!(piece.contains(&p, 0.0, 1e-12));
                }
            }
        }
    }

    #[test]
    fn scenario_one_arc_endpoints() {
        let g = geom(10_000.0, 1000.0, 3000.0);
        let pieces = reduced_region(Scenario::S1, &g);
        let RegionPiece::ConstRangeArc { d_w, theta_lo, theta_hi } = pieces[0] else { panic!("{pieces:?}") };
        assert_eq!(d_w, 3000.0);
        assert_eq!(theta_lo, FRAC_PI_6);
        assert!((theta_hi - 0.3f64.acos()).abs() < 1e-15);
    }

    #[test]
    fn above_region_upper_edge_is_over_the_receiver() {
        let g = geom(1000.0, 1200.0, 2000.0);
        let piece = reduced_region(Scenario::S6, &g)[0];
        for d in [1200.0, 1500.0, 2000.0] {
            let (_, t_hi) = piece.theta_range_at(d);
            let (x, _) = PolarPlacement { d_w: d, theta_w: t_hi }.ground_offsets(1000.0);
            assert!(x.abs() < 1e-9);
        }
    }
}
