use std::io::Write;

use blockage::sim::{rng::derive_seed, simulate};
use blockage::{outage_probability, run_sweep, ModelParams, SweepRecord};

use crate::config::{Mode, RunConfig};
use crate::error::CliError;
use crate::output::{emit_results, with_output, write_outage, OutageRow};
use crate::validate::run_checks;

/// Theory and simulation for every `(rho, r)` cell of the configuration.
pub fn sweep_records(cfg: &RunConfig) -> Result<Vec<SweepRecord>, CliError> {
    Ok(run_sweep(&cfg.grid(), cfg.chunk_size)?)
}

/// Outage rows ordered by radius, then intensity, then threshold.
pub fn outage_rows(cfg: &RunConfig) -> Result<Vec<OutageRow>, CliError> {
    let mut rows = Vec::new();
    let rhos = cfg.rho.values();
    for &r in &cfg.radii {
        let geo = cfg.geometry.with_radius(r)?;
        for &rho in &rhos {
            let params = ModelParams::from_db(rho, cfg.zeta_db, &geo)?;
            for &threshold_db in &cfg.thresholds_db {
                let seed = derive_seed(cfg.seed, rows.len() as u64);
                let theory = outage_probability(&params, &geo, threshold_db)?;
                let run = simulate(&params, &geo, cfg.trials, seed, cfg.chunk_size, Some(threshold_db))?;
                let sim = run.outages as f64 / cfg.trials as f64;
                let sim_std_error = (sim * (1.0 - sim) / cfg.trials as f64).sqrt();
                let theory_se = (theory * (1.0 - theory) / cfg.trials as f64).sqrt();
                rows.push(OutageRow {
                    rho,
                    r,
                    threshold_db,
                    theory,
                    sim,
                    sim_std_error,
                    within_3se: (sim - theory).abs() <= 3.0 * theory_se,
                    trials: cfg.trials,
                    seed,
                });
            }
        }
    }
    Ok(rows)
}

/// Run the configured mode. Validation lines go to `report`.
pub fn execute(cfg: &RunConfig, report: &mut dyn Write) -> Result<(), CliError> {
    match cfg.mode {
        Mode::Eval | Mode::Sweep => {
            let records = sweep_records(cfg)?;
            emit_results(&records, cfg.format, cfg.out.as_deref())
        }
        Mode::Outage => {
            let rows = outage_rows(cfg)?;
            with_output(cfg.out.as_deref(), |w| write_outage(&rows, cfg.format, w))
        }
        Mode::Validate => {
            let checks = run_checks(cfg);
            let io_err = |source| CliError::Io {
                path: "<report>".into(),
                source,
            };
            for c in &checks {
                writeln!(report, "{c}").map_err(io_err)?;
            }
            let failed: Vec<String> = checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.to_string())
                .collect();
            writeln!(
                report,
                "{} of {} checks passed",
                checks.len() - failed.len(),
                checks.len()
            )
            .map_err(io_err)?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Validation { failed })
            }
        }
    }
}
