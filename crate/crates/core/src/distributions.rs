//! Distributions of a single blocker's distance and subtended angle, and of
//! the blocker count inside the communication circle.

use statrs::function::gamma::ln_gamma;

use crate::error::{BlockageError, Result};
use crate::geometry::{GeometryConfig, ModelParams};

/// CDF of the distance of a uniformly placed blocker in the annulus `[s, r]`:
/// `(d^2 - s^2) / (r^2 - s^2)`.
pub fn distance_cdf(d: f64, geo: &GeometryConfig) -> Result<f64> {
    let (s, r) = (geo.min_distance(), geo.radius());
    if !(s..=r).contains(&d) {
        return Err(BlockageError::domain("distance d", d, format!("[{s}, {r}]")));
    }
    if d == r {
        return Ok(1.0);
    }
    Ok((d * d - s * s) / geo.annulus_span())
}

/// Inverse of [`distance_cdf`]: maps a uniform variate `u` in `[0, 1]` to a
/// distance in `[s, r]`.
pub fn sample_distance(u: f64, geo: &GeometryConfig) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(BlockageError::domain("uniform variate u", u, "[0, 1]"));
    }
    Ok(inverse_distance_cdf(u, geo))
}

#[inline]
pub(crate) fn inverse_distance_cdf(u: f64, geo: &GeometryConfig) -> f64 {
    let s = geo.min_distance();
    // clamp absorbs rounding at u = 1
    (s * s + u * geo.annulus_span()).sqrt().clamp(s, geo.radius())
}

/// Poisson probability of `m` blockers in the circle,
/// `rho_bar^m e^{-rho_bar} / m!`, evaluated in log space.
pub fn blocker_count_pmf(m: u64, params: &ModelParams) -> f64 {
    poisson_pmf(m, params.rho_bar())
}

pub(crate) fn poisson_pmf(k: u64, mean: f64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let k = k as f64;
    (k * mean.ln() - mean - ln_gamma(k + 1.0)).exp()
}

/// Angle `2 asin(w / 2d)` subtended by a blocker at distance `d`.
pub fn subtended_angle(d: f64, geo: &GeometryConfig) -> Result<f64> {
    let (s, r) = (geo.min_distance(), geo.radius());
    if !(s..=r).contains(&d) {
        return Err(BlockageError::domain("distance d", d, format!("[{s}, {r}]")));
    }
    let k = geo.blocker_diameter() / (2.0 * d);
    if k > 1.0 {
        return Err(BlockageError::domain("w / 2d", k, "[0, 1]"));
    }
    Ok(2.0 * k.asin())
}

/// Density of the subtended angle on `[eps_min, eps_max]`:
/// `w^2 / (4 (r^2 - s^2)) * cos(eps/2) / sin^3(eps/2)`.
///
/// Errors outside the support; integrators should use
/// [`angle_pdf_or_zero`].
pub fn angle_pdf(eps: f64, geo: &GeometryConfig) -> Result<f64> {
    let dg = geo.derived();
    if !(dg.eps_min..=dg.eps_max).contains(&eps) {
        return Err(BlockageError::domain(
            "subtended angle eps",
            eps,
            format!("[{}, {}]", dg.eps_min, dg.eps_max),
        ));
    }
    Ok(angle_density(eps, geo))
}

/// [`angle_pdf`] extended by zero outside its support.
pub fn angle_pdf_or_zero(eps: f64, geo: &GeometryConfig) -> f64 {
    let dg = geo.derived();
    if (dg.eps_min..=dg.eps_max).contains(&eps) {
        angle_density(eps, geo)
    } else {
        0.0
    }
}

#[inline]
fn angle_density(eps: f64, geo: &GeometryConfig) -> f64 {
    let w = geo.blocker_diameter();
    let (sin, cos) = (eps / 2.0).sin_cos();
    w * w / (4.0 * geo.annulus_span()) * cos / (sin * sin * sin)
}
