//! Built-in consistency checks run by `blockage validate`.
//!
//! Each check compares two independent routes to the same quantity:
//! sampler against distribution law, closed form against quadrature or
//! series, simulation against the thinning formula.

use std::fmt;

use blockage::analysis::log_spaced;
use blockage::attenuation::approximation_bound;
use blockage::cover::{angle_pdf_mass, cover_prob_by_quadrature};
use blockage::sim::rng::{derive_seed, stream_rng};
use blockage::sim::simulate;
use blockage::stats::{chi_square_gof, ks_critical, ks_statistic};
use blockage::{
    blocker_count_pmf, cover_prob, distance_cdf, expected_attenuation_exact,
    expected_attenuation_paper, outage_probability, sample_field, BlockageError, GeometryConfig,
    ModelParams, ABS_ERROR_FLOOR,
};

use crate::config::RunConfig;

const KS_COEFFICIENT: f64 = 1.36;
const KS_SLACK: f64 = 1.5;
const CHI_SQUARE_ALPHA: f64 = 0.001;
const QUADRATURE_TOL: f64 = 1e-8;
const SERIES_TOL: f64 = 1e-10;
const SE_MULTIPLIER: f64 = 3.0;
const DISTRIBUTION_RHO: f64 = 0.1;
const CI_GRID_RHO: [f64; 2] = [0.05, 0.25];
const OUTAGE_THRESHOLDS_DB: [f64; 2] = [-10.0, -30.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// `sum_n zeta^n Poisson(n; mean)`, stopped once the unvisited tail mass is
/// below 1e-12.
pub fn poisson_series_attenuation(zeta: f64, mean: f64) -> f64 {
    let mut term = (-mean).exp();
    let mut mass = term;
    let mut total = term;
    let mut n = 0u32;
    let mut weight = 1.0;
    while (1.0 - mass > 1e-12 || (n as f64) < mean) && n < 1_000_000 {
        n += 1;
        term *= mean / n as f64;
        weight *= zeta;
        mass += term;
        total += term * weight;
    }
    total
}

struct Setup<'a> {
    cfg: &'a RunConfig,
    geos: Vec<GeometryConfig>,
}

impl Setup<'_> {
    fn seed(&self, k: u64) -> u64 {
        derive_seed(self.cfg.seed, k)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

fn error_check(name: &'static str, e: BlockageError) -> Check {
    check(name, false, format!("error: {e}"))
}

fn distance_ks(s: &Setup) -> Result<Check, BlockageError> {
    let geo = s.geos[0];
    let params = ModelParams::new(DISTRIBUTION_RHO, 1.0, &geo)?;
    let n = s.cfg.trials as usize;
    let mut rng = stream_rng(s.seed(0), 0);
    let mut ds = Vec::with_capacity(n);
    while ds.len() < n {
        let field = sample_field(&params, &geo, &mut rng)?;
        ds.extend(field.locations().iter().map(|l| l.d));
    }
    ds.truncate(n);
    let ks = ks_statistic(&mut ds, |d| distance_cdf(d, &geo).unwrap_or(f64::NAN));
    let limit = KS_SLACK * ks_critical(n, KS_COEFFICIENT);
    Ok(check(
        "distance-ks",
        ks < limit,
        format!("KS distance {ks:.3e} vs limit {limit:.3e} over {n} draws at r = {}", geo.radius()),
    ))
}

fn blocker_count_chi_square(s: &Setup) -> Result<Check, BlockageError> {
    let geo = s.geos[0];
    let params = ModelParams::new(DISTRIBUTION_RHO, 1.0, &geo)?;
    let mut rng = stream_rng(s.seed(1), 0);
    let mut hist: Vec<u64> = Vec::new();
    for _ in 0..s.cfg.trials {
        let m = sample_field(&params, &geo, &mut rng)?.len();
        if hist.len() <= m {
            hist.resize(m + 1, 0);
        }
        hist[m] += 1;
    }
    let last = hist.len() - 1;
    let mut probs: Vec<f64> = (0..=last as u64).map(|m| blocker_count_pmf(m, &params)).collect();
    probs[last] = 1.0 - probs[..last].iter().sum::<f64>();
    let fit = chi_square_gof(&hist, &probs, 5.0);
    Ok(check(
        "blocker-count-chi-square",
        fit.p_value > CHI_SQUARE_ALPHA,
        format!(
            "chi2 = {:.2} on {} dof, p = {:.4} (alpha {CHI_SQUARE_ALPHA}), mean count {:.3}",
            fit.statistic,
            fit.dof,
            fit.p_value,
            params.rho_bar()
        ),
    ))
}

fn angle_pdf_normalization(s: &Setup) -> Check {
    let worst = s
        .geos
        .iter()
        .map(|g| (angle_pdf_mass(g, 1e-12).value - 1.0).abs())
        .fold(0.0, f64::max);
    check(
        "angle-pdf-normalization",
        worst <= QUADRATURE_TOL,
        format!("max |integral - 1| = {worst:.2e} over {} radii", s.geos.len()),
    )
}

fn cover_prob_quadrature(s: &Setup) -> Check {
    let worst = s
        .geos
        .iter()
        .map(|g| (cover_prob(g) - cover_prob_by_quadrature(g, 1e-13).value).abs())
        .fold(0.0, f64::max);
    check(
        "cover-prob-quadrature",
        worst <= QUADRATURE_TOL,
        format!("max |closed form - quadrature| = {worst:.2e}"),
    )
}

fn thinning_oracle(s: &Setup) -> Result<Check, BlockageError> {
    let mut worst_series = 0.0f64;
    let mut bound_violations = 0;
    for geo in &s.geos {
        for rho in log_spaced(0.01, 0.5, 20) {
            let p = ModelParams::from_db(rho, s.cfg.zeta_db, geo)?;
            let g = cover_prob(geo);
            let exact = expected_attenuation_exact(&p, geo);
            let series = poisson_series_attenuation(p.zeta(), p.rho_bar() * g);
            worst_series = worst_series.max((exact - series).abs());
            let gap = (expected_attenuation_paper(&p, geo) - exact).abs();
            if g * (1.0 - p.zeta()) <= 0.05 && gap > approximation_bound(&p, geo) {
                bound_violations += 1;
            }
        }
    }
    Ok(check(
        "thinning-oracle",
        worst_series <= SERIES_TOL && bound_violations == 0,
        format!(
            "max |exact - series| = {worst_series:.2e}, {bound_violations} cells over the approximation bound"
        ),
    ))
}

fn simulation_vs_thinning(s: &Setup) -> Result<Check, BlockageError> {
    let mut misses = Vec::new();
    let mut cells = 0u64;
    for geo in &s.geos {
        for &rho in &CI_GRID_RHO {
            let p = ModelParams::from_db(rho, s.cfg.zeta_db, geo)?;
            let est = simulate(&p, geo, s.cfg.trials, s.seed(100 + cells), s.cfg.chunk_size, None)?
                .estimate;
            let exact = expected_attenuation_exact(&p, geo);
            let err = (est.mean - exact).abs();
            if err > SE_MULTIPLIER * est.std_error && err > ABS_ERROR_FLOOR {
                misses.push(format!("(rho {rho}, r {})", geo.radius()));
            }
            cells += 1;
        }
    }
    Ok(check(
        "simulation-vs-thinning",
        misses.is_empty(),
        if misses.is_empty() {
            format!("{cells} cells within {SE_MULTIPLIER} standard errors")
        } else {
            format!("outside {SE_MULTIPLIER} standard errors: {}", misses.join(" "))
        },
    ))
}

fn outage_consistency(s: &Setup) -> Result<Check, BlockageError> {
    let geo = s.geos[0];
    let p = ModelParams::from_db(CI_GRID_RHO[1], s.cfg.zeta_db, &geo)?;
    let mut worst = 0.0f64;
    for (i, &th) in OUTAGE_THRESHOLDS_DB.iter().enumerate() {
        let theory = outage_probability(&p, &geo, th)?;
        let run = simulate(&p, &geo, s.cfg.trials, s.seed(200 + i as u64), s.cfg.chunk_size, Some(th))?;
        let emp = run.outages as f64 / s.cfg.trials as f64;
        let se = (theory * (1.0 - theory) / s.cfg.trials as f64).sqrt();
        let z = if se > 0.0 {
            (emp - theory).abs() / se
        } else if emp == theory {
            0.0
        } else {
            f64::INFINITY
        };
        worst = worst.max(z);
    }
    Ok(check(
        "outage-consistency",
        worst <= SE_MULTIPLIER,
        format!("worst deviation {worst:.2} standard errors over {} thresholds", OUTAGE_THRESHOLDS_DB.len()),
    ))
}

/// Run every check with the configuration's geometry, loss, trial count,
/// seed and chunk size.
pub fn run_checks(cfg: &RunConfig) -> Vec<Check> {
    let geos: Vec<GeometryConfig> = cfg
        .radii
        .iter()
        .filter_map(|&r| cfg.geometry.with_radius(r).ok())
        .collect();
    let s = Setup { cfg, geos };
    vec![
        distance_ks(&s).unwrap_or_else(|e| error_check("distance-ks", e)),
        blocker_count_chi_square(&s).unwrap_or_else(|e| error_check("blocker-count-chi-square", e)),
        angle_pdf_normalization(&s),
        cover_prob_quadrature(&s),
        thinning_oracle(&s).unwrap_or_else(|e| error_check("thinning-oracle", e)),
        simulation_vs_thinning(&s).unwrap_or_else(|e| error_check("simulation-vs-thinning", e)),
        outage_consistency(&s).unwrap_or_else(|e| error_check("outage-consistency", e)),
    ]
}
