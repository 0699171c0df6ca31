//! Blockage model for open-area mm-wave device-to-device links.
//!
//! Blockers are cylinders of diameter `w` dropped by a homogeneous Poisson
//! point process inside the annulus `[s, r]` around a receiver sitting at the
//! centre of its communication circle. A blocker whose subtended angle
//! contains the arrival direction is a *cover*; each cover multiplies the
//! received power by the penetration loss `zeta`. The crate provides
//!
//! - the closed-form distributions, cover probability and expected
//!   attenuation ([`distributions`], [`cover`], [`attenuation`]),
//! - a seeded, chunk-parallel Monte Carlo engine that drops blockers and
//!   counts covers ([`sim`]),
//! - parameter sweeps comparing theory and simulation ([`analysis`]).
//!
//! Internally attenuation is a linear power ratio in `(0, 1]`; use
//! [`units::db_to_linear`] at the edges.

pub mod analysis;
pub mod attenuation;
pub mod cover;
pub mod distributions;
mod error;
pub mod geometry;
pub mod quadrature;
pub mod sim;
pub mod stats;
pub mod units;

pub use analysis::{
    approximation_error_report, run_sweep, ApproxErrorRow, SweepGrid, SweepRecord,
    ABS_ERROR_FLOOR,
};
pub use attenuation::{expected_attenuation_exact, expected_attenuation_paper, outage_probability};
pub use cover::{cover_count_pmf, cover_prob, single_cover_prob_given_eps};
pub use distributions::{
    angle_pdf, blocker_count_pmf, distance_cdf, sample_distance, subtended_angle,
};
pub use error::{BlockageError, Result};
pub use geometry::{CoverCount, DerivedGeometry, GeometryConfig, ModelParams, PolarLocation};
pub use sim::{
    count_covers, empirical_outage, estimate_attenuation, sample_field, AttenuationEstimate,
    BlockerField, TrialResult,
};
