use serde::Serialize;

use super::sweep::SweepGrid;
use crate::attenuation::{
    approximation_bound, expected_attenuation_exact, expected_attenuation_paper,
};
use crate::cover::cover_prob;
use crate::geometry::ModelParams;

/// Cells with `g (1 - zeta)` above this are outside the small-cover regime
/// where the Poisson-limit closed form is expected to be tight.
pub const APPROX_REGIME_MAX: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxErrorRow {
    pub rho: f64,
    pub r: f64,
    pub cover_prob: f64,
    /// `|closed - exact|`.
    pub gap: f64,
    /// `rho_bar g^2 (1 - zeta)^2 / 2`.
    pub bound: f64,
    pub in_regime: bool,
    /// Set when the cell is outside the regime or the gap exceeds the bound.
    pub flagged: bool,
}

/// Gap between the closed form and the exact thinning value for every cell
/// of the grid (no simulation). Invalid cells are skipped.
pub fn approximation_error_report(grid: &SweepGrid) -> Vec<ApproxErrorRow> {
    grid.cells()
        .filter_map(|(rho, r)| {
            let geo = grid.geo_template.with_radius(r).ok()?;
            let params = ModelParams::from_db(rho, grid.zeta_db, &geo).ok()?;
            let g = cover_prob(&geo);
            let gap = (expected_attenuation_paper(&params, &geo)
                - expected_attenuation_exact(&params, &geo))
            .abs();
            let bound = approximation_bound(&params, &geo);
            let in_regime = g * (1.0 - params.zeta()) <= APPROX_REGIME_MAX;
            Some(ApproxErrorRow {
                rho,
                r,
                cover_prob: g,
                gap,
                bound,
                in_regime,
                flagged: !in_regime || gap > bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::log_spaced;
    use crate::geometry::GeometryConfig;

    fn grid(rhos: Vec<f64>, radii: Vec<f64>) -> SweepGrid {
        SweepGrid {
            rho_values: rhos,
            radii,
            geo_template: GeometryConfig::human(10.0).unwrap(),
            zeta_db: -20.0,
            trials: 1,
            seed: 0,
        }
    }

    #[test]
    fn empty_process_has_no_gap() {
        for row in approximation_error_report(&grid(vec![0.0], vec![5.0, 20.0])) {
            assert_eq!(row.gap, 0.0);
            assert!(!row.flagged);
        }
    }

    #[test]
    fn desk_scale_grid_within_bound() {
        let rows = approximation_error_report(&grid(log_spaced(0.01, 0.5, 20), vec![5.0, 10.0, 20.0]));
        assert_eq!(rows.len(), 60);
        for row in rows {
            assert!(row.in_regime);
            assert!(row.gap <= row.bound, "{row:?}");
        }
    }

    #[test]
    fn tight_annulus_is_flagged() {
        let rows = approximation_error_report(&grid(vec![0.5, 5.0], vec![0.5]));
        assert_eq!(rows.len(), 2);
        for row in rows {
            assert!(row.cover_prob > 0.05);
            assert!(row.flagged);
            assert!(row.gap <= row.bound);
        }
    }
}
