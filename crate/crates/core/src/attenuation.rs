//! Expected attenuation along the arrival direction and the outage
//! probability of the blockage loss.
//!
//! Each blocker is kept as a cover independently with probability `g`, so
//! the cover count is Poisson with mean `rho_bar * g` (thinning). Two
//! closed forms are provided:
//!
//! - [`expected_attenuation_paper`]: `exp(-rho_bar (1 - exp(-g (1 - zeta))))`,
//!   which replaces the binomial cover law by its Poisson limit and then
//!   truncates the exponential series;
//! - [`expected_attenuation_exact`]: `exp(-rho_bar g (1 - zeta))`, the exact
//!   generating function of the thinned count evaluated at `zeta`.
//!
//! Their difference is bounded by `rho_bar g^2 (1 - zeta)^2 / 2`.

use statrs::function::gamma::gamma_lr;

use crate::cover::cover_prob;
use crate::error::{BlockageError, Result};
use crate::geometry::{GeometryConfig, ModelParams};
use crate::units::linear_to_db;

/// Approximate expected attenuation via the Poisson-limit/Taylor route.
pub fn expected_attenuation_paper(params: &ModelParams, geo: &GeometryConfig) -> f64 {
    let g = cover_prob(geo);
    let x = g * (1.0 - params.zeta());
    // 1 - e^{-x} without cancellation for small x
    (-params.rho_bar() * -(-x).exp_m1()).exp()
}

/// Exact `E[zeta^N]` for the Poisson-thinned cover count.
pub fn expected_attenuation_exact(params: &ModelParams, geo: &GeometryConfig) -> f64 {
    let g = cover_prob(geo);
    (-params.rho_bar() * g * (1.0 - params.zeta())).exp()
}

/// Upper bound on `|closed - exact|`: `rho_bar g^2 (1 - zeta)^2 / 2`.
pub fn approximation_bound(params: &ModelParams, geo: &GeometryConfig) -> f64 {
    let x = cover_prob(geo) * (1.0 - params.zeta());
    params.rho_bar() * x * x / 2.0
}

/// Whether `n` covers of `zeta_db` each drive the loss strictly below
/// `threshold_db`.
#[inline]
pub fn is_outage(zeta_db: f64, n: u64, threshold_db: f64) -> bool {
    zeta_db * (n as f64) < threshold_db
}

/// Smallest cover count that puts the link in outage, or `None` when no
/// count does (transparent blockers).
pub fn outage_min_covers(zeta: f64, threshold_db: f64) -> Option<u64> {
    let zeta_db = linear_to_db(zeta);
    if zeta_db >= 0.0 {
        return None;
    }
    let guess = (threshold_db / zeta_db).floor().max(0.0);
    let mut k = guess as u64 + 1;
    while k > 0 && is_outage(zeta_db, k - 1, threshold_db) {
        k -= 1;
    }
    while !is_outage(zeta_db, k, threshold_db) {
        k += 1;
    }
    Some(k)
}

/// `Pr{N >= k}` for `N ~ Poisson(mean)`.
pub fn poisson_tail(k: u64, mean: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if mean == 0.0 {
        return 0.0;
    }
    // Pr{N >= k} = P(k, mean), the regularized lower incomplete gamma
    gamma_lr(k as f64, mean)
}

/// Probability that the blockage loss `10 log10(zeta) N` falls strictly
/// below `threshold_db` (which must be `<= 0`), with `N ~ Poisson(rho_bar g)`.
///
/// Transparent blockers (`zeta = 1`) never cause outage and yield 0.
pub fn outage_probability(
    params: &ModelParams,
    geo: &GeometryConfig,
    threshold_db: f64,
) -> Result<f64> {
    if !(threshold_db <= 0.0) {
        return Err(BlockageError::domain("outage threshold (dB)", threshold_db, "(-inf, 0]"));
    }
    let Some(k) = outage_min_covers(params.zeta(), threshold_db) else {
        return Ok(0.0);
    };
    Ok(poisson_tail(k, params.rho_bar() * cover_prob(geo)))
}
