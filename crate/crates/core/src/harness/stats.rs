use statrs::distribution::{ContinuousCDF, Normal};

/// Two-sided standard-normal quantile for `confidence`, e.g. 2.5758 at 0.99.
pub fn z_value(confidence: f64) -> f64 {
    Normal::standard().inverse_cdf(0.5 + confidence / 2.0)
}

/// Wilson score interval for `successes` out of `trials`.
///
/// Zero successes give a lower bound of exactly 0 and `trials` successes an
/// upper bound of exactly 1. With no trials the interval is `[0, 1]`.
pub fn wilson_ci(successes: u64, trials: u64, confidence: f64) -> (f64, f64) {
    assert!(successes <= trials, "{successes} successes out of {trials} trials");
    assert!(confidence > 0.0 && confidence < 1.0, "confidence {confidence} outside (0, 1)");
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z = z_value(confidence);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if successes == 0 { 0.0 } else { (centre - half).clamp(0.0, p) };
    let high = if successes == trials { 1.0 } else { (centre + half).clamp(p, 1.0) };
    (low, high)
}

/// Probability of hitting the target by guessing uniformly, `2^{−n}`.
pub fn success_threshold(n_qubits: usize) -> f64 {
    0.5f64.powi(n_qubits as i32)
}
