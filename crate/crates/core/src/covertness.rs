//! KL-divergence covertness constraint and its monotone inversions.
//!
//! The warden observes `n` samples that are `N(0, s2_w)` when the UAV is
//! silent and `N(0, P_bar + s2_w)` when it transmits. The KL divergence
//! between the two product distributions is
//!
//! ```text
//! D01 = n/2 * [ ln(1 + x) - x / (1 + x) ],   x = P_bar / s2_w
//! ```
//!
//! and `D01 <= 2 eps^2` guarantees the warden's minimum total error rate
//! stays above `1 - eps`. Because `D01` is increasing in `P_bar`, which is
//! linear in transmit power and decreasing in range, each inversion below
//! is a single bisection.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{invalid, Error, Result};
use crate::geometry::{willie_path_gain, willie_received_power, EnvModel, PolarPlacement};
use crate::solvers::{bisect, bisect_expanding, Bracket};

/// Relative residual every covertness inversion must reach.
pub const INVERSION_TOL: f64 = 1e-12;

/// Noise, blocklength, power budget and covertness requirement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    /// Receiver noise power, watts.
    pub sigma2_b: f64,
    /// Warden noise power, watts.
    pub sigma2_w: f64,
    /// Blocklength in channel uses.
    pub n: u32,
    /// Maximum transmit power, watts.
    pub p_max: f64,
    /// Covertness parameter: the warden's error rate must stay above `1 - epsilon`.
    pub epsilon: f64,
}

impl RadioParams {
    pub fn new(sigma2_b: f64, sigma2_w: f64, n: u32, p_max: f64, epsilon: f64) -> Result<Self> {
        let radio = Self { sigma2_b, sigma2_w, n, p_max, epsilon };
        radio.validate()?;
        Ok(radio)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("radio.sigma2_b", self.sigma2_b),
            ("radio.sigma2_w", self.sigma2_w),
            ("radio.p_max", self.p_max),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(invalid(field, format!("must be a positive power, got {value}")));
            }
        }
        if self.n == 0 {
            return Err(invalid("radio.n", "blocklength must be at least 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(invalid("radio.epsilon", format!("must lie in (0, 1), got {}", self.epsilon)));
        }
        Ok(())
    }

    pub fn budget(&self) -> CovertBudget {
        CovertBudget::from_epsilon(self.epsilon)
    }
}

/// Upper limit on `D01`, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovertBudget {
    pub d01_cap: f64,
}

impl CovertBudget {
    pub fn from_epsilon(epsilon: f64) -> Self {
        Self { d01_cap: 2.0 * epsilon * epsilon }
    }

    fn residual_tolerance(&self) -> f64 {
        INVERSION_TOL * self.d01_cap.max(1.0)
    }
}

/// `ln(1 + x) - x / (1 + x)`, accurate for small `x`.
fn kl_kernel(x: f64) -> f64 {
    if x < 1e-3 {
        // sum_{k>=2} (-1)^k (k - 1)/k x^k; ten terms leave < 1e-30 relative.
        let mut term = x;
        let mut sum = 0.0;
        for k in 2..=12 {
            term *= -x;
            sum -= (k as f64 - 1.0) / k as f64 * term;
        }
        sum
    } else {
        x.ln_1p() - x / (1.0 + x)
    }
}

/// KL divergence `D01` in nats for effective warden signal power `p_bar`.
pub fn kl_divergence(radio: &RadioParams, p_bar: f64) -> f64 {
    0.5 * radio.n as f64 * kl_kernel(p_bar / radio.sigma2_w)
}

/// Lower bound `1 - sqrt(D01 / 2)` on the warden's minimum total error rate,
/// clipped at zero.
pub fn error_rate_lower_bound(d01: f64) -> f64 {
    (1.0 - (0.5 * d01).sqrt()).max(0.0)
}

fn check(what: &'static str, residual: f64, budget: &CovertBudget) -> Result<()> {
    let tolerance = budget.residual_tolerance();
    if residual.abs() > tolerance {
        return Err(Error::Residual { what, residual, tolerance });
    }
    Ok(())
}

/// The warden signal power at which `D01` equals the budget.
pub fn invert_kl_in_received_power(radio: &RadioParams, budget: &CovertBudget) -> Result<f64> {
    if !(budget.d01_cap > 0.0) {
        return Err(invalid("budget.d01_cap", "must be positive"));
    }
    let target = 2.0 * budget.d01_cap / radio.n as f64;
    // Start from the small-x estimate x ~ sqrt(2 target).
    let guess = (2.0 * target).sqrt().max(1e-300);
    let x = bisect_expanding(|x| kl_kernel(x) - target, 0.0, guess, 1e-16)?;
    let p_bar = x * radio.sigma2_w;
    check("received-power inversion", kl_divergence(radio, p_bar) - budget.d01_cap, budget)?;
    Ok(p_bar)
}

/// Largest transmit power that keeps `D01` within budget at placement `p`.
/// Not clamped to `p_max`.
pub fn max_covert_power(
    env: &EnvModel,
    radio: &RadioParams,
    p: &PolarPlacement,
    budget: &CovertBudget,
) -> Result<f64> {
    Ok(invert_kl_in_received_power(radio, budget)? / willie_path_gain(env, p))
}

/// `D01` at transmit power `power` from placement `p`.
pub fn d01_at(env: &EnvModel, radio: &RadioParams, p: &PolarPlacement, power: f64) -> f64 {
    kl_divergence(radio, willie_received_power(env, p, power))
}

/// Where full power meets the covertness budget along an arc of fixed range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AngleThreshold {
    /// `D01(p_max)` crosses the budget at this angle; lower angles are covert
    /// at full power, higher ones are not.
    Interior(f64),
    /// Full power is covert at every angle up to `pi/2`.
    AllFeasible,
    /// Full power violates the budget even at zero elevation.
    NoneFeasible,
}

/// Angle at which `D01(p_max, d_w, theta)` equals the budget.
pub fn covert_angle_threshold(
    env: &EnvModel,
    radio: &RadioParams,
    d_w: f64,
    budget: &CovertBudget,
) -> Result<AngleThreshold> {
    let excess = |theta: f64| {
        d01_at(env, radio, &PolarPlacement { d_w, theta_w: theta }, radio.p_max) - budget.d01_cap
    };
    if excess(FRAC_PI_2) <= 0.0 {
        return Ok(AngleThreshold::AllFeasible);
    }
    if excess(0.0) > 0.0 {
        return Ok(AngleThreshold::NoneFeasible);
    }
    let theta = bisect(excess, &Bracket::new(0.0, FRAC_PI_2))?;
    check("angle threshold", excess(theta), budget)?;
    Ok(AngleThreshold::Interior(theta))
}

/// Height above the warden at which full power exactly meets the budget.
/// Below it full power is detectable; above it the budget is slack.
pub fn covert_height_threshold(env: &EnvModel, radio: &RadioParams, budget: &CovertBudget) -> Result<f64> {
    let p_bar = invert_kl_in_received_power(radio, budget)?;
    // Solve p_max * gain(h) = p_bar over log-height; gain is decreasing in h.
    let excess = |u: f64| (radio.p_max * willie_path_gain(env, &PolarPlacement::vertical(u.exp())) / p_bar).ln();
    let (mut lo, mut hi) = (-1.0, 1.0);
    for _ in 0..64 {
        if excess(lo) > 0.0 {
            break;
        }
        lo -= hi - lo;
    }
    for _ in 0..64 {
        if excess(hi) <= 0.0 {
            break;
        }
        hi += hi - lo;
    }
    let h = bisect(excess, &Bracket::new(lo, hi).with_tol(1e-16))?.exp();
    let d01 = d01_at(env, radio, &PolarPlacement::vertical(h), radio.p_max);
    check("height threshold", d01 - budget.d01_cap, budget)?;
    Ok(h)
}
