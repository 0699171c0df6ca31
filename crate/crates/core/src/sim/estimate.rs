use rayon::prelude::*;

use super::accum::NeumaierSum;
use super::field::run_trial;
use super::rng::stream_rng;
use crate::attenuation::is_outage;
use crate::error::{BlockageError, Result};
use crate::geometry::{GeometryConfig, ModelParams};
use crate::units::linear_to_db;

/// Monte Carlo estimate of the expected attenuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttenuationEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub trials: u64,
    pub seed: u64,
    pub mean_db: f64,
}

/// Everything a run of trials produces: the attenuation estimate, the
/// outage count for an optional threshold, and cover/blocker totals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationSummary {
    pub estimate: AttenuationEstimate,
    pub outages: u64,
    pub total_covers: u64,
    pub total_blockers: u64,
}

#[derive(Default)]
struct ChunkTally {
    trials: u64,
    sum: NeumaierSum,
    sum_sq: NeumaierSum,
    outages: u64,
    covers: u64,
    blockers: u64,
}

const Z95: f64 = 1.96;

/// Run `trials` trials in chunks of `chunk_size`, counting outages against
/// `threshold_db` when given.
pub fn simulate(
    params: &ModelParams,
    geo: &GeometryConfig,
    trials: u64,
    seed: u64,
    chunk_size: u64,
    threshold_db: Option<f64>,
) -> Result<SimulationSummary> {
    if trials == 0 {
        return Err(BlockageError::InvalidSettings("trials must be at least 1".into()));
    }
    if chunk_size == 0 {
        return Err(BlockageError::InvalidSettings("chunk size must be at least 1".into()));
    }
    let zeta_db = linear_to_db(params.zeta());
    let chunks = trials.div_ceil(chunk_size);

    let tallies = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let len = chunk_size.min(trials - chunk * chunk_size);
            let mut rng = stream_rng(seed, chunk);
            let mut buf = Vec::new();
            let mut tally = ChunkTally::default();
            for _ in 0..len {
                let t = run_trial(params, geo, &mut rng, &mut buf)?;
                tally.trials += 1;
                tally.sum.add(t.attenuation_linear);
                tally.sum_sq.add(t.attenuation_linear * t.attenuation_linear);
                tally.covers += t.n_covers;
                tally.blockers += t.m_blockers;
                if threshold_db.is_some_and(|th| is_outage(zeta_db, t.n_covers, th)) {
                    tally.outages += 1;
                }
            }
            Ok(tally)
        })
        .collect::<Result<Vec<_>>>()?;

    // fixed-order reduction
    let mut total = ChunkTally::default();
    for t in &tallies {
        total.trials += t.trials;
        total.sum.merge(&t.sum);
        total.sum_sq.merge(&t.sum_sq);
        total.outages += t.outages;
        total.covers += t.covers;
        total.blockers += t.blockers;
    }

    let n = total.trials as f64;
    let mean = total.sum.value() / n;
    let variance = if total.trials > 1 {
        ((total.sum_sq.value() - total.sum.value() * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    let std_error = (variance / n).sqrt();
    Ok(SimulationSummary {
        estimate: AttenuationEstimate {
            mean,
            std_error,
            ci95_low: mean - Z95 * std_error,
            ci95_high: mean + Z95 * std_error,
            trials,
            seed,
            mean_db: linear_to_db(mean),
        },
        outages: total.outages,
        total_covers: total.covers,
        total_blockers: total.blockers,
    })
}

/// Mean of `zeta^N` over `trials` independent blocker drops.
pub fn estimate_attenuation(
    params: &ModelParams,
    geo: &GeometryConfig,
    trials: u64,
    seed: u64,
    chunk_size: u64,
) -> Result<AttenuationEstimate> {
    simulate(params, geo, trials, seed, chunk_size, None).map(|s| s.estimate)
}

/// Fraction of trials whose blockage loss falls strictly below
/// `threshold_db`.
pub fn empirical_outage(
    params: &ModelParams,
    geo: &GeometryConfig,
    threshold_db: f64,
    trials: u64,
    seed: u64,
    chunk_size: u64,
) -> Result<f64> {
    if !(threshold_db <= 0.0) {
        return Err(BlockageError::domain("outage threshold (dB)", threshold_db, "(-inf, 0]"));
    }
    let s = simulate(params, geo, trials, seed, chunk_size, Some(threshold_db))?;
    Ok(s.outages as f64 / trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo() -> GeometryConfig {
        GeometryConfig::new(10.0, 0.5, 0.3, 0.5).unwrap()
    }

    #[test]
    fn no_blockers_is_exactly_one() {
        let p = ModelParams::new(0.0, 0.01, &geo()).unwrap();
        let e = estimate_attenuation(&p, &geo(), 1000, 1, 64).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.std_error, 0.0);
        assert_eq!(e.mean_db, 0.0);
    }

    #[test]
    fn transparent_blockers_is_exactly_one() {
        let p = ModelParams::new(0.3, 1.0, &geo()).unwrap();
        let e = estimate_attenuation(&p, &geo(), 1000, 1, 64).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn ci_brackets_mean() {
        let p = ModelParams::new(0.1, 0.01, &geo()).unwrap();
        let e = estimate_attenuation(&p, &geo(), 5000, 3, 500).unwrap();
        assert!(e.ci95_low <= e.mean && e.mean <= e.ci95_high);
        assert!(e.std_error > 0.0);
        assert_eq!(e.trials, 5000);
        assert_eq!(e.seed, 3);
    }

    #[test]
    fn uneven_last_chunk() {
        let p = ModelParams::new(0.1, 0.01, &geo()).unwrap();
        let s = simulate(&p, &geo(), 1001, 3, 100, None).unwrap();
        assert_eq!(s.estimate.trials, 1001);
    }

    #[test]
    fn bad_settings() {
        let p = ModelParams::new(0.1, 0.01, &geo()).unwrap();
        assert!(estimate_attenuation(&p, &geo(), 0, 1, 10).is_err());
        assert!(estimate_attenuation(&p, &geo(), 10, 1, 0).is_err());
        assert!(empirical_outage(&p, &geo(), 2.0, 10, 1, 10).is_err());
    }

    #[test]
    fn outage_without_blockers() {
        let p = ModelParams::new(0.0, 0.01, &geo()).unwrap();
        assert_eq!(empirical_outage(&p, &geo(), -10.0, 1000, 1, 100).unwrap(), 0.0);
    }

    #[test]
    fn same_seed_same_outage() {
        let p = ModelParams::new(0.2, 0.01, &geo()).unwrap();
        let a = empirical_outage(&p, &geo(), -30.0, 2000, 8, 128).unwrap();
        let b = empirical_outage(&p, &geo(), -30.0, 2000, 8, 128).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
