//! Theory-versus-simulation sweeps over blocker intensity and circle radius.

mod approx;
mod grid;
mod sweep;

pub use approx::{approximation_error_report, ApproxErrorRow, APPROX_REGIME_MAX};
pub use grid::{linear_spaced, log_spaced, RhoSpacing};
pub use sweep::{run_sweep, SweepGrid, SweepRecord, ABS_ERROR_FLOOR};
