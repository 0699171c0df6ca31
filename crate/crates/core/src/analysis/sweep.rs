use serde::Serialize;

use crate::attenuation::{expected_attenuation_exact, expected_attenuation_paper};
use crate::error::{BlockageError, Result};
use crate::geometry::{GeometryConfig, ModelParams};
use crate::sim::{rng::derive_seed, simulate};

/// Absolute agreement (linear) accepted even when the confidence interval
/// is narrower, so near-deterministic cells do not fail on rounding.
pub const ABS_ERROR_FLOOR: f64 = 1e-4;

/// Cartesian grid of intensities and radii sharing blocker/receiver sizes,
/// `s` and the penetration loss.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub rho_values: Vec<f64>,
    pub radii: Vec<f64>,
    /// Supplies `w`, `w_r` and `s`; its own radius is ignored.
    pub geo_template: GeometryConfig,
    pub zeta_db: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.rho_values.is_empty() || self.radii.is_empty() {
            return Err(BlockageError::InvalidSettings(
                "sweep needs at least one intensity and one radius".into(),
            ));
        }
        if let Some(rho) = self.rho_values.iter().find(|r| !(**r >= 0.0 && r.is_finite())) {
            return Err(BlockageError::InvalidParams(format!(
                "intensity rho = {rho} must be finite and nonnegative"
            )));
        }
        for &r in &self.radii {
            self.geo_template.with_radius(r)?;
        }
        if self.trials == 0 {
            return Err(BlockageError::InvalidSettings("trials must be at least 1".into()));
        }
        ModelParams::from_db(0.0, self.zeta_db, &self.geo_template)?;
        Ok(())
    }

    /// `(rho, r)` pairs in record order: radius outer, intensity inner.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| self.rho_values.iter().map(move |&rho| (rho, r)))
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.rho_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Theory and simulation at one grid point. Attenuations are linear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub rho: f64,
    pub r: f64,
    pub theory_paper: f64,
    pub theory_exact: f64,
    pub sim_mean: f64,
    pub sim_std_error: f64,
    pub sim_ci95_low: f64,
    pub sim_ci95_high: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub within_ci: bool,
    pub trials: u64,
    /// Seed of this cell's simulation.
    pub seed: u64,
}

/// Evaluate every cell of the grid. Cell `i` is simulated with
/// `derive_seed(grid.seed, i)`.
pub fn run_sweep(grid: &SweepGrid, chunk_size: u64) -> Result<Vec<SweepRecord>> {
    grid.validate()?;
    grid.cells()
        .enumerate()
        .map(|(index, (rho, r))| {
            run_cell(grid, rho, r, derive_seed(grid.seed, index as u64), chunk_size).map_err(|e| {
                BlockageError::Cell {
                    index,
                    rho,
                    r,
                    source: Box::new(e),
                }
            })
        })
        .collect()
}

fn run_cell(grid: &SweepGrid, rho: f64, r: f64, seed: u64, chunk_size: u64) -> Result<SweepRecord> {
    let geo = grid.geo_template.with_radius(r)?;
    let params = ModelParams::from_db(rho, grid.zeta_db, &geo)?;
    let theory_paper = expected_attenuation_paper(&params, &geo);
    let theory_exact = expected_attenuation_exact(&params, &geo);
    let est = simulate(&params, &geo, grid.trials, seed, chunk_size, None)?.estimate;
    let abs_err = (theory_paper - est.mean).abs();
    let within_ci = (est.ci95_low <= theory_paper && theory_paper <= est.ci95_high)
        || abs_err <= ABS_ERROR_FLOOR;
    Ok(SweepRecord {
        rho,
        r,
        theory_paper,
        theory_exact,
        sim_mean: est.mean,
        sim_std_error: est.std_error,
        sim_ci95_low: est.ci95_low,
        sim_ci95_high: est.ci95_high,
        abs_err,
        rel_err: abs_err / est.mean,
        within_ci,
        trials: grid.trials,
        seed,
    })
}
