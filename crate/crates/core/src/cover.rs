//! Probability that a blocker covers the arrival direction, and the law of
//! the number of covers among a fixed number of blockers.
//!
//! The arrival direction is fixed at `phi = 0`; the azimuth of every blocker
//! is uniform, so the cover event does not depend on `phi`.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::distributions::angle_pdf_or_zero;
use crate::error::{BlockageError, Result};
use crate::geometry::GeometryConfig;
use crate::quadrature::{integrate, Integral};

/// Chance that a blocker subtending `eps` radians, with uniform azimuth,
/// covers a fixed direction: `eps / 2pi`.
pub fn single_cover_prob_given_eps(eps: f64) -> Result<f64> {
    if !(0.0..=2.0 * PI).contains(&eps) {
        return Err(BlockageError::domain("subtended angle eps", eps, "[0, 2pi]"));
    }
    Ok(eps / (2.0 * PI))
}

/// Closed-form probability `g(r)` that one blocker dropped uniformly in the
/// annulus covers the arrival direction.
pub fn cover_prob(geo: &GeometryConfig) -> f64 {
    let dg = geo.derived();
    let w = geo.blocker_diameter();
    let term = |k: f64| 2.0 * k.asin() / (k * k) + 2.0 * (1.0 / (k * k) - 1.0).max(0.0).sqrt();
    w * w / (8.0 * PI * geo.annulus_span()) * (term(dg.k_r) - term(dg.k_s))
}

/// `g(r)` by numerically integrating `eps / 2pi` against the angle density.
/// Independent of the closed form in [`cover_prob`].
pub fn cover_prob_by_quadrature(geo: &GeometryConfig, abs_tol: f64) -> Integral {
    let dg = geo.derived();
    integrate(
        |e| e / (2.0 * PI) * angle_pdf_or_zero(e, geo),
        dg.eps_min,
        dg.eps_max,
        abs_tol,
    )
}

/// Integral of the angle density over its support (should be one).
pub fn angle_pdf_mass(geo: &GeometryConfig, abs_tol: f64) -> Integral {
    let dg = geo.derived();
    integrate(|e| angle_pdf_or_zero(e, geo), dg.eps_min, dg.eps_max, abs_tol)
}

/// Binomial law of `n` covers among `m` blockers with cover probability
/// [`cover_prob`]`(geo)`.
pub fn cover_count_pmf(n: u64, m: u64, geo: &GeometryConfig) -> Result<f64> {
    binomial_pmf(n, m, cover_prob(geo))
}

// C(m, n) stays finite in f64 up to here
const DIRECT_BINOMIAL_MAX: u64 = 1000;

/// `C(m, n) g^n (1 - g)^(m - n)`; log space for large `m`.
pub fn binomial_pmf(n: u64, m: u64, g: f64) -> Result<f64> {
    if n > m {
        return Err(BlockageError::domain("cover count n", n as f64, format!("[0, {m}]")));
    }
    if !(0.0..=1.0).contains(&g) {
        return Err(BlockageError::domain("cover probability g", g, "[0, 1]"));
    }
    if g == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if g == 1.0 {
        return Ok(if n == m { 1.0 } else { 0.0 });
    }
    if m <= DIRECT_BINOMIAL_MAX {
        let k = n.min(m - n);
        let choose = (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64);
        return Ok(choose * g.powi(n as i32) * (1.0 - g).powi((m - n) as i32));
    }
    let (nf, mf) = (n as f64, m as f64);
    let ln_choose = ln_gamma(mf + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(mf - nf + 1.0);
    Ok((ln_choose + nf * g.ln() + (mf - nf) * (-g).ln_1p()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_angle_cover_chance() {
        assert_eq!(single_cover_prob_given_eps(0.0).unwrap(), 0.0);
        assert_eq!(single_cover_prob_given_eps(2.0 * PI).unwrap(), 1.0);
        assert_eq!(single_cover_prob_given_eps(PI).unwrap(), 0.5);
        assert!(single_cover_prob_given_eps(-0.1).is_err());
        assert!(single_cover_prob_given_eps(7.0).is_err());
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let geo = GeometryConfig::new(10.0, 0.5, 0.3, 0.5).unwrap();
        let closed = cover_prob(&geo);
        let quad = cover_prob_by_quadrature(&geo, 1e-13);
        assert!((closed - quad.value).abs() < 1e-8, "{closed} vs {:?}", quad);
        assert!(closed > 0.0 && closed < 1.0);
    }

    #[test]
    fn vanishing_width() {
        let g = |w: f64| cover_prob(&GeometryConfig::new(10.0, w, 0.0, 0.4).unwrap());
        assert!(g(1e-3) < 1e-4);
        assert!(g(1e-6) < 1e-7);
        assert!(g(1e-6) > 0.0);
    }

    #[test]
    fn larger_circle_dilutes_cover() {
        let g10 = cover_prob(&GeometryConfig::new(10.0, 0.5, 0.3, 0.5).unwrap());
        let g20 = cover_prob(&GeometryConfig::new(20.0, 0.5, 0.3, 0.5).unwrap());
        assert!(g20 < g10);
    }

    #[test]
    fn binomial_values() {
        let geo = GeometryConfig::human(10.0).unwrap();
        assert_eq!(cover_count_pmf(0, 0, &geo).unwrap(), 1.0);
        let total: f64 = (0..=5).map(|n| cover_count_pmf(n, 5, &geo).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((binomial_pmf(1, 2, 0.1).unwrap() - 0.18).abs() < 1e-15);
        assert!(cover_count_pmf(3, 2, &geo).is_err());
    }

    #[test]
    fn direct_and_log_routes_agree() {
        let direct = binomial_pmf(400, 1000, 0.4).unwrap();
        let log = binomial_pmf(400, 1001, 0.4).unwrap() * 601.0 / (1001.0 * 0.6);
        assert!((direct - log).abs() / direct < 1e-10);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial_pmf(0, 4, 0.0).unwrap(), 1.0);
        assert_eq!(binomial_pmf(4, 4, 1.0).unwrap(), 1.0);
        assert_eq!(binomial_pmf(3, 4, 1.0).unwrap(), 0.0);
    }
}
