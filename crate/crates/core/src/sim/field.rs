use std::f64::consts::{PI, TAU};

use rand::Rng;

use super::poisson::sample_poisson;
use crate::distributions::inverse_distance_cdf;
use crate::error::{BlockageError, Result};
use crate::geometry::{CoverCount, GeometryConfig, ModelParams, PolarLocation};

/// Largest blocker count a single field may hold before sampling gives up.
pub const DEFAULT_MAX_BLOCKERS: u64 = 10_000_000;

/// One realization of the blocker process around the receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockerField {
    locations: Vec<PolarLocation>,
    geo: GeometryConfig,
}

impl BlockerField {
    /// Field from explicit locations; each must lie in `[s, r] x (0, 2pi]`.
    pub fn new(geo: GeometryConfig, locations: Vec<PolarLocation>) -> Result<Self> {
        let (s, r) = (geo.min_distance(), geo.radius());
        for loc in &locations {
            if !(s..=r).contains(&loc.d) {
                return Err(BlockageError::domain("blocker distance", loc.d, format!("[{s}, {r}]")));
            }
            if !(loc.omega > 0.0 && loc.omega <= TAU) {
                return Err(BlockageError::domain("blocker azimuth", loc.omega, "(0, 2pi]"));
            }
        }
        Ok(BlockerField { locations, geo })
    }

    pub fn locations(&self) -> &[PolarLocation] {
        &self.locations
    }

    pub fn geometry(&self) -> &GeometryConfig {
        &self.geo
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }
}

/// Outcome of one Monte Carlo trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialResult {
    pub n_covers: u64,
    pub m_blockers: u64,
    /// `zeta^n_covers`.
    pub attenuation_linear: f64,
}

/// Drop blockers: a Poisson(`rho_bar`) count, each at an independent
/// distance from the annulus law and a uniform azimuth in `(0, 2pi]`.
pub fn sample_field<R: Rng + ?Sized>(
    params: &ModelParams,
    geo: &GeometryConfig,
    rng: &mut R,
) -> Result<BlockerField> {
    sample_field_with_cap(params, geo, rng, DEFAULT_MAX_BLOCKERS)
}

pub fn sample_field_with_cap<R: Rng + ?Sized>(
    params: &ModelParams,
    geo: &GeometryConfig,
    rng: &mut R,
    cap: u64,
) -> Result<BlockerField> {
    let mut locations = Vec::new();
    fill_field(params, geo, rng, cap, &mut locations)?;
    Ok(BlockerField {
        locations,
        geo: *geo,
    })
}

pub(crate) fn fill_field<R: Rng + ?Sized>(
    params: &ModelParams,
    geo: &GeometryConfig,
    rng: &mut R,
    cap: u64,
    out: &mut Vec<PolarLocation>,
) -> Result<()> {
    out.clear();
    let m = sample_poisson(rng, params.rho_bar());
    if m > cap {
        return Err(BlockageError::TooManyBlockers { count: m, cap });
    }
    out.reserve(m as usize);
    for _ in 0..m {
        let d = inverse_distance_cdf(rng.random::<f64>(), geo);
        let omega = TAU * (1.0 - rng.random::<f64>());
        out.push(PolarLocation { d, omega });
    }
    Ok(())
}

/// Map an angle difference into `[-pi, pi)`.
#[inline]
pub fn wrap_angle(delta: f64) -> f64 {
    (delta + PI).rem_euclid(TAU) - PI
}

#[inline]
fn covers(loc: &PolarLocation, w: f64, phi: f64) -> bool {
    let half_eps = (w / (2.0 * loc.d)).asin();
    wrap_angle(loc.omega - phi).abs() <= half_eps
}

/// Count the blockers whose subtended interval `[omega - eps/2, omega + eps/2]`
/// contains the direction `phi`.
pub fn count_covers(field: &BlockerField, phi: f64) -> CoverCount {
    let w = field.geo.blocker_diameter();
    let n = field.locations.iter().filter(|loc| covers(loc, w, phi)).count();
    CoverCount {
        n: n as u64,
        m: field.locations.len() as u64,
    }
}

/// One trial along `phi = 0`, reusing `buf` for the blocker locations.
pub fn run_trial<R: Rng + ?Sized>(
    params: &ModelParams,
    geo: &GeometryConfig,
    rng: &mut R,
    buf: &mut Vec<PolarLocation>,
) -> Result<TrialResult> {
    fill_field(params, geo, rng, DEFAULT_MAX_BLOCKERS, buf)?;
    let w = geo.blocker_diameter();
    let n = buf.iter().filter(|loc| covers(loc, w, 0.0)).count() as u64;
    let count = CoverCount {
        n,
        m: buf.len() as u64,
    };
    Ok(TrialResult {
        n_covers: count.n,
        m_blockers: count.m,
        attenuation_linear: count.attenuation(params.zeta()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::rng::stream_rng;

    fn geo() -> GeometryConfig {
        GeometryConfig::new(10.0, 0.5, 0.0, 0.5).unwrap()
    }

    fn single(d: f64, omega: f64) -> BlockerField {
        BlockerField::new(geo(), vec![PolarLocation { d, omega }]).unwrap()
    }

    #[test]
    fn blocker_at_one_meter() {
        // eps/2 = asin(0.25) ~ 14.48 deg
        let field = single(1.0, TAU);
        assert_eq!(count_covers(&field, 10f64.to_radians()).n, 1);
        assert_eq!(count_covers(&field, 20f64.to_radians()).n, 0);
        assert_eq!(count_covers(&field, -10f64.to_radians()).n, 1);
    }

    #[test]
    fn cover_across_the_seam() {
        // d chosen so that eps = 0.1
        let d = 0.5 / (2.0 * 0.05f64.sin());
        let field = single(d, TAU - 0.01);
        assert_eq!(count_covers(&field, 0.01).n, 1);
        assert_eq!(count_covers(&field, 0.05).n, 0);
    }

    #[test]
    fn wrap_range() {
        assert!((wrap_angle(TAU - 0.01) + 0.01).abs() < 1e-12);
        assert!((wrap_angle(-TAU + 0.01) - 0.01).abs() < 1e-12);
        assert_eq!(wrap_angle(0.0), 0.0);
        for x in [-20.0, -3.2, 3.2, 7.0, 100.0] {
            let w = wrap_angle(x);
            assert!((-PI..PI).contains(&w));
        }
    }

    #[test]
    fn explicit_field_validation() {
        assert!(BlockerField::new(geo(), vec![PolarLocation { d: 0.2, omega: 1.0 }]).is_err());
        assert!(BlockerField::new(geo(), vec![PolarLocation { d: 1.0, omega: 0.0 }]).is_err());
        assert!(BlockerField::new(geo(), vec![PolarLocation { d: 1.0, omega: TAU }]).is_ok());
    }

    #[test]
    fn empty_process_gives_empty_field() {
        let p = ModelParams::new(0.0, 0.01, &geo()).unwrap();
        let mut rng = stream_rng(1, 0);
        for _ in 0..100 {
            assert!(sample_field(&p, &geo(), &mut rng).unwrap().is_empty());
        }
    }

    #[test]
    fn fixed_seed_same_field() {
        let p = ModelParams::new(0.2, 0.01, &geo()).unwrap();
        let a = sample_field(&p, &geo(), &mut stream_rng(9, 4)).unwrap();
        let b = sample_field(&p, &geo(), &mut stream_rng(9, 4)).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn sampled_locations_respect_support() {
        let p = ModelParams::new(1.0, 0.01, &geo()).unwrap();
        let f = sample_field(&p, &geo(), &mut stream_rng(3, 0)).unwrap();
        assert!(BlockerField::new(geo(), f.locations().to_vec()).is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        let p = ModelParams::new(1.0, 0.01, &geo()).unwrap();
        let err = sample_field_with_cap(&p, &geo(), &mut stream_rng(3, 0), 10).unwrap_err();
        assert!(matches!(err, BlockageError::TooManyBlockers { cap: 10, .. }));
    }

    #[test]
    fn trial_attenuation_is_zeta_power() {
        let p = ModelParams::new(0.5, 0.1, &geo()).unwrap();
        let mut rng = stream_rng(5, 0);
        let mut buf = Vec::new();
        for _ in 0..200 {
            let t = run_trial(&p, &geo(), &mut rng, &mut buf).unwrap();
            assert!(t.n_covers <= t.m_blockers);
            assert_eq!(t.attenuation_linear, 0.1f64.powi(t.n_covers as i32));
        }
    }
}
