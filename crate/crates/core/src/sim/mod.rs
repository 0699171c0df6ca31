//! Seeded Monte Carlo engine.
//!
//! Each trial drops a Poisson number of blockers uniformly in the annulus,
//! counts the covers of the direction `phi = 0` and records `zeta^n`.
//! Trials are grouped into fixed-size chunks; chunk `i` draws from ChaCha
//! stream `i` of the run seed, and chunk tallies are merged in chunk order,
//! so results depend only on `(seed, chunk_size)` and not on the number of
//! worker threads.

mod accum;
mod estimate;
mod field;
mod poisson;
pub mod rng;

pub use accum::NeumaierSum;
pub use estimate::{
    empirical_outage, estimate_attenuation, simulate, AttenuationEstimate, SimulationSummary,
};
pub use field::{
    count_covers, run_trial, sample_field, sample_field_with_cap, wrap_angle, BlockerField,
    TrialResult, DEFAULT_MAX_BLOCKERS,
};
pub use poisson::sample_poisson;
