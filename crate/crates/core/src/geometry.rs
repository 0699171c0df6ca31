//! Spatial setup: the communication circle, blocker and receiver sizes, and
//! the Poisson intensity and penetration loss of the blocker population.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{BlockageError, Result};
use crate::units::db_to_linear;

/// Smallest admissible `r - s` in meters.
pub const MIN_SEPARATION: f64 = 1e-6;

/// Default blocker diameter for a human body, in meters.
pub const DEFAULT_BLOCKER_DIAMETER: f64 = 0.5;

/// Default receiver diameter for a handheld user, in meters.
pub const DEFAULT_RECEIVER_DIAMETER: f64 = 0.3;

/// Geometry of one receiver and its communication circle.
///
/// Blockers live in the annulus between the minimum blocker distance `s`
/// and the communication-circle radius `r`. Construction enforces
/// `r > s >= (w + w_r) / 2`, `w > 0` and `w_r >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryConfig {
    r: f64,
    w: f64,
    w_r: f64,
    s: f64,
}

impl GeometryConfig {
    pub fn new(r: f64, w: f64, w_r: f64, s: f64) -> Result<Self> {
        let all_finite = [r, w, w_r, s].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(BlockageError::InvalidGeometry(format!(
                "non-finite value in r = {r}, w = {w}, w_r = {w_r}, s = {s}"
            )));
        }
        if w <= 0.0 {
            return Err(BlockageError::InvalidGeometry(format!(
                "blocker diameter w = {w} must be positive"
            )));
        }
        if w_r < 0.0 {
            return Err(BlockageError::InvalidGeometry(format!(
                "receiver diameter w_r = {w_r} must be nonnegative"
            )));
        }
        if s < (w + w_r) / 2.0 {
            return Err(BlockageError::InvalidGeometry(format!(
                "minimum blocker distance s = {s} is below (w + w_r)/2 = {}",
                (w + w_r) / 2.0
            )));
        }
        if r <= s {
            return Err(BlockageError::InvalidGeometry(format!(
                "radius r = {r} must exceed the minimum blocker distance s = {s}"
            )));
        }
        if r - s < MIN_SEPARATION {
            return Err(BlockageError::Degenerate {
                separation: r - s,
                min: MIN_SEPARATION,
            });
        }
        Ok(GeometryConfig { r, w, w_r, s })
    }

    /// Geometry with `s` at its smallest admissible value `(w + w_r)/2`.
    pub fn with_min_distance(r: f64, w: f64, w_r: f64) -> Result<Self> {
        Self::new(r, w, w_r, (w + w_r) / 2.0)
    }

    /// Human-sized blockers and receiver around a circle of radius `r`.
    pub fn human(r: f64) -> Result<Self> {
        Self::with_min_distance(r, DEFAULT_BLOCKER_DIAMETER, DEFAULT_RECEIVER_DIAMETER)
    }

    /// Same blocker/receiver sizes and `s`, different radius.
    pub fn with_radius(&self, r: f64) -> Result<Self> {
        Self::new(r, self.w, self.w_r, self.s)
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn blocker_diameter(&self) -> f64 {
        self.w
    }

    pub fn receiver_diameter(&self) -> f64 {
        self.w_r
    }

    pub fn min_distance(&self) -> f64 {
        self.s
    }

    /// Annulus area factor `r^2 - s^2`.
    pub fn annulus_span(&self) -> f64 {
        self.r * self.r - self.s * self.s
    }

    pub fn derived(&self) -> DerivedGeometry {
        let k_r = self.w / (2.0 * self.r);
        let k_s = self.w / (2.0 * self.s);
        DerivedGeometry {
            k_r,
            k_s,
            eps_min: 2.0 * k_r.asin(),
            eps_max: 2.0 * k_s.asin(),
        }
    }
}

/// Ratios `k = w / 2d` at the two ends of the annulus and the matching
/// support `[eps_min, eps_max]` of the subtended angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedGeometry {
    pub k_r: f64,
    pub k_s: f64,
    pub eps_min: f64,
    pub eps_max: f64,
}

/// Blocker population: intensity `rho` (per square meter), per-blocker
/// penetration loss `zeta` (linear, in `(0, 1]`) and the mean blocker count
/// `rho_bar = rho * pi * r^2` of the circle it was built for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    rho: f64,
    zeta: f64,
    rho_bar: f64,
}

impl ModelParams {
    pub fn new(rho: f64, zeta: f64, geo: &GeometryConfig) -> Result<Self> {
        if !rho.is_finite() || rho < 0.0 {
            return Err(BlockageError::InvalidParams(format!(
                "intensity rho = {rho} must be finite and nonnegative"
            )));
        }
        if !(zeta > 0.0 && zeta <= 1.0) {
            return Err(BlockageError::InvalidParams(format!(
                "penetration loss zeta = {zeta} must lie in (0, 1]"
            )));
        }
        Ok(ModelParams {
            rho,
            zeta,
            rho_bar: rho * PI * geo.r * geo.r,
        })
    }

    /// Build from a penetration loss given in dB (must be `<= 0`).
    pub fn from_db(rho: f64, zeta_db: f64, geo: &GeometryConfig) -> Result<Self> {
        if !zeta_db.is_finite() || zeta_db > 0.0 {
            return Err(BlockageError::InvalidParams(format!(
                "penetration loss {zeta_db} dB must be finite and <= 0 dB"
            )));
        }
        Self::new(rho, db_to_linear(zeta_db), geo)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Expected number of blockers in the communication circle.
    pub fn rho_bar(&self) -> f64 {
        self.rho_bar
    }
}

/// Blocker position relative to the receiver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarLocation {
    /// Radial distance in meters.
    pub d: f64,
    /// Azimuth in radians, in `(0, 2pi]`.
    pub omega: f64,
}

impl PolarLocation {
    /// Angular width `2 asin(w / 2d)` of a blocker of diameter `w` at this
    /// distance.
    pub fn subtended_angle(&self, w: f64) -> f64 {
        2.0 * (w / (2.0 * self.d)).asin()
    }
}

/// Number of covers `n` among `m` blockers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoverCount {
    pub n: u64,
    pub m: u64,
}

impl CoverCount {
    /// `zeta^n`.
    pub fn attenuation(&self, zeta: f64) -> f64 {
        powi_u64(zeta, self.n)
    }
}

pub(crate) fn powi_u64(base: f64, exp: u64) -> f64 {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(exp as f64),
    }
}
