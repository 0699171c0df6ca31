//! Shared fixtures for the criterion benchmarks.

use blockage::{GeometryConfig, ModelParams};

/// Human-sized blockers at -20 dB around a circle of radius `r`.
pub fn human_cell(rho: f64, r: f64) -> (ModelParams, GeometryConfig) {
    let geo = GeometryConfig::human(r).expect("valid radius");
    let params = ModelParams::from_db(rho, -20.0, &geo).expect("valid intensity");
    (params, geo)
}
