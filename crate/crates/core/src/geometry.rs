//! Geometry of the UAV / ground-receiver / warden triangle and the
//! air-to-ground channel model.
//!
//! Placements are expressed in polar coordinates centred on the warden:
//! `d_w` is the UAV's range from the warden and `theta_w` its elevation
//! angle seen from the warden. The ground receiver sits on the ground at
//! distance `L` from the warden, on the same side as the UAV.
//!
//! ```text
//!                     UAV
//!                    /|  \
//!            d_w    / |   \  d_b
//!                  /  |y   \
//!   warden ───────────┴──────── receiver
//!          theta_w     <── x ──>
//!          <─────────── L ──────────>
//! ```
//!
//! The LoS probability S-curve takes the elevation in **degrees**; every
//! other angle in the crate is in radians and the conversion happens in
//! [`los_probability`] only.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::covertness::RadioParams;
use crate::error::{invalid, Error, Result};

const DEG_PER_RAD: f64 = 180.0 / PI;

/// Offsets closer than this fraction of `L` to the point directly above the
/// receiver are treated as lying on it.
pub const ABOVE_RECEIVER_BAND: f64 = 1e-9;

/// Environment-dependent channel parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvModel {
    /// S-curve scale.
    pub a: f64,
    /// S-curve rate, per degree.
    pub b: f64,
    /// Path-gain exponent of the LoS component (negative).
    pub xi_los: f64,
    /// Path-gain exponent of the NLoS component (negative, at most `xi_los`).
    pub xi_nlos: f64,
}

impl EnvModel {
    pub fn new(a: f64, b: f64, xi_los: f64, xi_nlos: f64) -> Result<Self> {
        let env = Self { a, b, xi_los, xi_nlos };
        env.validate()?;
        Ok(env)
    }

    /// Suburban S-curve with free-space LoS and cubic NLoS decay.
    pub fn suburban() -> Self {
        Self { a: 4.88, b: 0.429, xi_los: -2.0, xi_nlos: -3.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(invalid("env.a", format!("must be positive, got {}", self.a)));
        }
        if !(self.b.is_finite() && self.b > 0.0) {
            return Err(invalid("env.b", format!("must be positive, got {}", self.b)));
        }
        if !(self.xi_los.is_finite() && self.xi_los < 0.0) {
            return Err(invalid("env.xi_los", format!("must be negative, got {}", self.xi_los)));
        }
        if !(self.xi_nlos.is_finite() && self.xi_nlos <= self.xi_los) {
            return Err(invalid(
                "env.xi_nlos",
                format!("must not exceed xi_los = {}, got {}", self.xi_los, self.xi_nlos),
            ));
        }
        Ok(())
    }
}

/// UAV location in warden-centred polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPlacement {
    /// Range from the warden, metres.
    pub d_w: f64,
    /// Elevation angle at the warden, radians in `[0, pi/2]`.
    pub theta_w: f64,
}

impl PolarPlacement {
    pub fn new(d_w: f64, theta_w: f64) -> Result<Self> {
        if !(d_w.is_finite() && d_w > 0.0) {
            return Err(invalid("d_w", format!("must be positive, got {d_w}")));
        }
        if !(0.0..=FRAC_PI_2).contains(&theta_w) {
            return Err(invalid("theta_w", format!("must lie in [0, pi/2], got {theta_w}")));
        }
        Ok(Self { d_w, theta_w })
    }

    /// Hovering directly above the warden at height `h`.
    pub fn vertical(h: f64) -> Self {
        Self { d_w: h, theta_w: FRAC_PI_2 }
    }

    /// Horizontal offset from the UAV's ground projection to the receiver
    /// (positive while the UAV is on the warden's side of the receiver) and
    /// the UAV's height.
    pub fn ground_offsets(&self, l: f64) -> (f64, f64) {
        let (sin, cos) = self.theta_w.sin_cos();
        (l - self.d_w * cos, self.d_w * sin)
    }
}

/// Box constraints on the UAV placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryConstraints {
    /// Receiver-warden ground distance, metres.
    pub l: f64,
    pub d_min: f64,
    pub d_max: f64,
    /// Lower bound on the elevation angle at the warden, radians.
    pub theta_min: f64,
}

impl GeometryConstraints {
    pub fn new(l: f64, d_min: f64, d_max: f64, theta_min: f64) -> Result<Self> {
        let geom = Self { l, d_min, d_max, theta_min };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l.is_finite() && self.l > 0.0) {
            return Err(invalid("geometry.l", format!("must be positive, got {}", self.l)));
        }
        if !(self.d_min.is_finite() && self.d_min > 0.0) {
            return Err(invalid("geometry.d_min", format!("must be positive, got {}", self.d_min)));
        }
        if !(self.d_max.is_finite() && self.d_max > self.d_min) {
            return Err(invalid(
                "geometry.d_max",
                format!("must exceed d_min = {}, got {}", self.d_min, self.d_max),
            ));
        }
        // theta_min = pi/2 is the vertical (height-only) limit and is allowed.
        if !(0.0..=FRAC_PI_2).contains(&self.theta_min) {
            return Err(invalid(
                "geometry.theta_min",
                format!("must lie in [0, pi/2], got {}", self.theta_min),
            ));
        }
        Ok(())
    }

    /// `(L cos theta_min, L / cos theta_min)`, the two ranges that split the
    /// box into the six scenarios.
    pub fn critical_ranges(&self) -> (f64, f64) {
        let cos = self.theta_min.cos();
        (self.l * cos, self.l / cos)
    }

    /// True if `p` lies in the box, allowing `tol` relative slack on range and
    /// `tol` radians on angle.
    pub fn contains(&self, p: &PolarPlacement, tol: f64) -> bool {
        p.d_w >= self.d_min * (1.0 - tol)
            && p.d_w <= self.d_max * (1.0 + tol)
            && p.theta_w >= self.theta_min - tol
            && p.theta_w <= FRAC_PI_2 + tol
    }
}

/// Derived quantities of the UAV-to-receiver link.
#[derive(Debug, Clone, Copy)]
struct ReceiverLink {
    x: f64,
    range: f64,
    elevation: f64,
}

fn receiver_link(p: &PolarPlacement, l: f64) -> Result<ReceiverLink> {
    let (x, y) = p.ground_offsets(l);
    // hypot of the offsets rather than the law of cosines: no cancellation
    // when the UAV is close to the receiver.
    let range = x.hypot(y);
    if range <= 1e-12 * l.max(p.d_w) {
        return Err(Error::DegenerateGeometry);
    }
    Ok(ReceiverLink { x, range, elevation: y.atan2(x.abs()) })
}

/// Distance from the UAV to the ground receiver.
pub fn bob_range(p: &PolarPlacement, l: f64) -> Result<f64> {
    receiver_link(p, l).map(|link| link.range)
}

/// Elevation angle of the UAV seen from the receiver, in `[0, pi/2]`.
///
/// Equal to `arcsin(d_w sin theta_w / d_b)`; when the UAV has flown past the
/// receiver the elevation is still measured from the ground, so it never
/// exceeds `pi/2`.
pub fn bob_elevation(p: &PolarPlacement, l: f64) -> Result<f64> {
    receiver_link(p, l).map(|link| link.elevation)
}

/// LoS probability for an elevation angle given in radians.
pub fn los_probability(env: &EnvModel, theta: f64) -> f64 {
    1.0 / (1.0 + env.a * (-env.b * (theta * DEG_PER_RAD - env.a)).exp())
}

/// `a exp(-b (theta_deg - a))`, the term whose derivative drives the S-curve.
fn s_curve_tail(env: &EnvModel, theta: f64) -> f64 {
    env.a * (-env.b * (theta * DEG_PER_RAD - env.a)).exp()
}

/// LoS-weighted path gain towards the receiver, `d_b^xi_los * p_b`.
pub fn bob_link_gain(env: &EnvModel, p: &PolarPlacement, l: f64) -> Result<f64> {
    let link = receiver_link(p, l)?;
    Ok(link.range.powf(env.xi_los) * los_probability(env, link.elevation))
}

/// Receiver SNR at transmit power `power` (watts).
pub fn effective_snr(
    env: &EnvModel,
    radio: &RadioParams,
    p: &PolarPlacement,
    l: f64,
    power: f64,
) -> Result<f64> {
    Ok(power * bob_link_gain(env, p, l)? / radio.sigma2_b)
}

/// Path gain towards the warden: LoS-weighted plus NLoS.
pub fn willie_path_gain(env: &EnvModel, p: &PolarPlacement) -> f64 {
    p.d_w.powf(env.xi_los) * los_probability(env, p.theta_w) + p.d_w.powf(env.xi_nlos)
}

/// Effective signal power seen by the warden when the UAV transmits at
/// `power` watts.
pub fn willie_received_power(env: &EnvModel, p: &PolarPlacement, power: f64) -> f64 {
    power * willie_path_gain(env, p)
}

/// Partial derivative of [`bob_link_gain`] with respect to `d_w`.
///
/// Evaluated from the unsimplified product-rule expansion. Directly above
/// the receiver the gain has a kink; there the limit from smaller `d_w` is
/// returned.
pub fn dgain_drange(env: &EnvModel, p: &PolarPlacement, l: f64) -> Result<f64> {
    let link = receiver_link(p, l)?;
    let (sin, cos) = p.theta_w.sin_cos();
    let range2 = link.range * link.range;
    let p_b = los_probability(env, link.elevation);
    let tail = s_curve_tail(env, link.elevation);
    let side = if link.x == 0.0 { 1.0 } else { link.x / link.x.abs() };

    let path_term = p_b * env.xi_los * (p.d_w - l * cos) / link.range.powf(2.0 - env.xi_los);
    let los_term = p_b * p_b * link.range.powf(env.xi_los) * DEG_PER_RAD * env.b * tail
        * sin
        * l
        * side
        / range2;
    Ok(path_term + los_term)
}

/// Partial derivative of [`bob_link_gain`] with respect to `theta_w`.
///
/// Same conventions as [`dgain_drange`]: at the kink directly above the
/// receiver the limit from smaller `theta_w` is returned.
pub fn dgain_dangle(env: &EnvModel, p: &PolarPlacement, l: f64) -> Result<f64> {
    let link = receiver_link(p, l)?;
    let (sin, _) = p.theta_w.sin_cos();
    let range2 = link.range * link.range;
    let p_b = los_probability(env, link.elevation);
    let tail = s_curve_tail(env, link.elevation);
    let g_over_x = g_over_abs_offset(p.d_w, p.theta_w, l);

    let path_term = p_b * env.xi_los * p.d_w * l * sin / link.range.powf(2.0 - env.xi_los);
    let los_term = p_b * p_b * link.range.powf(env.xi_los) * DEG_PER_RAD * env.b * tail * p.d_w
        * g_over_x
        / range2;
    Ok(path_term + los_term)
}

/// `G(theta_w) / |L - d_w cos theta_w|` with
/// `G = (L^2 + d_w^2) cos theta_w - d_w L (1 + cos^2 theta_w)`.
///
/// Within `ABOVE_RECEIVER_BAND * L` of the point above the receiver the
/// quotient is replaced by its limit from the far side of the receiver
/// (`d_w - L cos theta_w`), which is the side the angle brackets approach
/// it from.
pub(crate) fn g_over_abs_offset(d_w: f64, theta_w: f64, l: f64) -> f64 {
    let cos = theta_w.cos();
    let x = l - d_w * cos;
    if x.abs() <= ABOVE_RECEIVER_BAND * l {
        return d_w - l * cos;
    }
    let g = (l * l + d_w * d_w) * cos - d_w * l * (1.0 + cos * cos);
    g / x.abs()
}
