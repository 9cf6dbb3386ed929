//! The warden's optimal detector, evaluated exactly and by simulation.
//!
//! With zero-mean Gaussian observations whose variance is `s2_w` under the
//! silent hypothesis and `s2_w (1 + x)` under the transmitting one, the
//! likelihood-ratio test reduces to thresholding the received energy
//! `T = sum y_i^2` at
//!
//! ```text
//! tau = n s2_w (1 + x) ln(1 + x) / x
//! ```
//!
//! `T / s2_w` is chi-square with `n` degrees of freedom under the silent
//! hypothesis and `T / (s2_w (1 + x))` is under the other, so both error
//! rates are regularized incomplete gamma values.
//!
//! # Monte-Carlo streams
//!
//! [`simulate_detection`] splits the trials into blocks of
//! [`TRIALS_PER_BLOCK`]. Block `k` draws its silent-hypothesis observations
//! from `ChaCha8Rng::seed_from_u64(seed)` on stream `2k` and its transmitting
//! observations on stream `2k + 1`, one standard normal per sample in trial
//! order. Results therefore depend only on `(seed, trials, n, x)` and not on
//! evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::covertness::RadioParams;
use crate::special::{chi_square_cdf, chi_square_sf};

pub const TRIALS_PER_BLOCK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    /// False-alarm rate.
    pub alpha: f64,
    /// Miss rate.
    pub beta: f64,
    /// Total error rate `alpha + beta`.
    pub xi_star: f64,
    /// Energy threshold on `sum y_i^2`; infinite when the hypotheses coincide.
    pub threshold: f64,
}

impl DetectionResult {
    fn new(alpha: f64, beta: f64, threshold: f64) -> Self {
        Self { alpha, beta, xi_star: alpha + beta, threshold }
    }
}

/// Likelihood-ratio threshold on the received energy.
pub fn lrt_threshold(radio: &RadioParams, p_bar: f64) -> f64 {
    let x = p_bar / radio.sigma2_w;
    if x <= 0.0 {
        return f64::INFINITY;
    }
    radio.n as f64 * radio.sigma2_w * (1.0 + x) * x.ln_1p() / x
}

/// Minimum total error rate of the warden's optimal detector.
pub fn exact_min_error_rate(radio: &RadioParams, p_bar: f64) -> DetectionResult {
    let threshold = lrt_threshold(radio, p_bar);
    if threshold.is_infinite() {
        return DetectionResult::new(0.0, 1.0, threshold);
    }
    let x = p_bar / radio.sigma2_w;
    let k = radio.n as f64;
    let alpha = chi_square_sf(k, threshold / radio.sigma2_w);
    let beta = chi_square_cdf(k, threshold / (radio.sigma2_w * (1.0 + x)));
    DetectionResult::new(alpha, beta, threshold)
}

fn count_above(rng: &mut ChaCha8Rng, trials: u64, n: u32, std_dev: f64, threshold: f64) -> u64 {
    let mut hits = 0;
    for _ in 0..trials {
        let mut energy = 0.0;
        for _ in 0..n {
            let y = std_dev * rng.sample::<f64, _>(StandardNormal);
            energy += y * y;
        }
        if energy >= threshold {
            hits += 1;
        }
    }
    hits
}

/// Empirical error rates of the same detector over `trials` simulated
/// blocks per hypothesis. Deterministic in `seed`; see the module docs for
/// the stream layout.
pub fn simulate_detection(radio: &RadioParams, p_bar: f64, trials: u64, seed: u64) -> DetectionResult {
    let trials = trials.max(1);
    let threshold = lrt_threshold(radio, p_bar);
    let quiet_sd = radio.sigma2_w.sqrt();
    let active_sd = (radio.sigma2_w + p_bar).sqrt();
    let (mut false_alarms, mut detections) = (0, 0);
    let blocks = trials.div_ceil(TRIALS_PER_BLOCK);
    for block in 0..blocks {
        let size = TRIALS_PER_BLOCK.min(trials - block * TRIALS_PER_BLOCK);
        let mut quiet = ChaCha8Rng::seed_from_u64(seed);
        quiet.set_stream(2 * block);
        let mut active = ChaCha8Rng::seed_from_u64(seed);
        active.set_stream(2 * block + 1);
        false_alarms += count_above(&mut quiet, size, radio.n, quiet_sd, threshold);
        detections += count_above(&mut active, size, radio.n, active_sd, threshold);
    }
    let total = trials as f64;
    DetectionResult::new(false_alarms as f64 / total, (trials - detections) as f64 / total, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covertness::{error_rate_lower_bound, kl_divergence};

    fn radio(n: u32) -> RadioParams {
        RadioParams::new(1e-12, 1.0, n, 1.0, 0.1).unwrap()
    }

    #[test]
    fn silent_transmitter_is_undetectable() {
        let r = exact_min_error_rate(&radio(200), 0.0);
        assert_eq!(r.xi_star, 1.0);
        let sim = simulate_detection(&radio(20), 0.0, 2000, 3);
        assert_eq!(sim.xi_star, 1.0);
    }

    #[test]
    fn error_rate_vanishes_with_power() {
        let mut last = 1.0;
        for &x in &[0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0] {
            let xi = exact_min_error_rate(&radio(10), x).xi_star;
            assert!(xi < last);
            last = xi;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn exact_rate_respects_kl_bound() {
        for &n in &[1, 2, 10, 200, 1000] {
            for &x in &[1e-4, 1e-2, 0.3, 3.0, 30.0] {
                let r = radio(n);
                let xi = exact_min_error_rate(&r, x).xi_star;
                let bound = error_rate_lower_bound(kl_divergence(&r, x));
                assert!(xi >= bound - 1e-12, "n {n} x {x}: {xi} < {bound}");
                assert!(xi <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let a = simulate_detection(&radio(50), 0.2, 3000, 42);
        let b = simulate_detection(&radio(50), 0.2, 3000, 42);
        assert_eq!(a, b);
        let c = simulate_detection(&radio(50), 0.2, 3000, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn simulation_tracks_exact_rate() {
        let r = radio(30);
        let exact = exact_min_error_rate(&r, 0.4).xi_star;
        let trials = 20_000;
        let sim = simulate_detection(&r, 0.4, trials, 7).xi_star;
        let sigma = (exact * (2.0 - exact) / trials as f64).sqrt();
        assert!((sim - exact).abs() < 4.0 * sigma, "{sim} vs {exact}");
    }
}
