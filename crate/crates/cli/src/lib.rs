//! Command-line front end for the `blockage` model.
//!
//! Modes: `eval` (one intensity), `sweep` (intensity range), `outage`
//! (Poisson tail vs simulation) and `validate` (built-in checks). Results go
//! to CSV or JSON; attenuations are reported in dB.

pub mod config;
mod error;
pub mod output;
pub mod run;
pub mod validate;

pub use config::{parse_args, Format, Mode, RhoSpec, RunConfig};
pub use error::CliError;
pub use output::{emit_results, write_results, ResultRow, CSV_HEADER};
pub use run::{execute, outage_rows, sweep_records};
