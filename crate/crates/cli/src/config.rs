//! Command-line grammar and validated run configuration.

use std::ffi::OsString;
use std::path::PathBuf;

use blockage::analysis::RhoSpacing;
use blockage::geometry::{DEFAULT_BLOCKER_DIAMETER, DEFAULT_RECEIVER_DIAMETER};
use blockage::{GeometryConfig, SweepGrid};
use clap::{Parser, ValueEnum};

use crate::error::CliError;

pub const DEFAULT_ZETA_DB: f64 = -20.0;
pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CHUNK_SIZE: u64 = 10_000;
pub const DEFAULT_SWEEP_RADII: [f64; 3] = [5.0, 10.0, 20.0];
pub const DEFAULT_POINT_RADIUS: f64 = 10.0;
pub const DEFAULT_OUTAGE_THRESHOLD_DB: f64 = -30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Theory and simulation at one intensity for each radius.
    Eval,
    /// Theory and simulation over an intensity range for each radius.
    Sweep,
    /// Outage probability, Poisson tail against simulation.
    Outage,
    /// Run the built-in consistency checks.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl From<Spacing> for RhoSpacing {
    fn from(s: Spacing) -> Self {
        match s {
            Spacing::Linear => RhoSpacing::Linear,
            Spacing::Log => RhoSpacing::Log,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "blockage",
    version,
    about = "Expected mm-wave attenuation under Poisson-placed cylindrical blockers"
)]
struct Args {
    #[arg(value_enum)]
    mode: Mode,

    /// Blocker intensity in blockers per square meter (single point)
    #[arg(long, conflicts_with_all = ["rho_min", "rho_max", "rho_steps", "rho_spacing"])]
    rho: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    rho_min: f64,
    #[arg(long, default_value_t = 0.5)]
    rho_max: f64,
    #[arg(long, default_value_t = 20)]
    rho_steps: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Linear)]
    rho_spacing: Spacing,

    /// Communication-circle radius in meters; repeat for several
    #[arg(long = "radius")]
    radii: Vec<f64>,
    /// Blocker diameter in meters
    #[arg(long, default_value_t = DEFAULT_BLOCKER_DIAMETER)]
    w: f64,
    /// Receiver diameter in meters
    #[arg(long, default_value_t = DEFAULT_RECEIVER_DIAMETER)]
    wr: f64,
    /// Minimum blocker distance in meters [default: (w + wr) / 2]
    #[arg(long)]
    s: Option<f64>,
    /// Per-blocker penetration loss in dB (<= 0)
    #[arg(long, default_value_t = DEFAULT_ZETA_DB, allow_negative_numbers = true)]
    zeta_db: f64,

    /// Outage threshold in dB (<= 0); repeat for several
    #[arg(long = "threshold-db", allow_negative_numbers = true)]
    thresholds_db: Vec<f64>,

    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Trials per RNG stream; results are reproducible for a fixed chunk size
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    chunk_size: u64,
    /// Worker threads [default: all cores]
    #[arg(long)]
    threads: Option<usize>,

    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RhoSpec {
    Single(f64),
    Range {
        min: f64,
        max: f64,
        steps: usize,
        spacing: RhoSpacing,
    },
}

impl RhoSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            RhoSpec::Single(rho) => vec![rho],
            RhoSpec::Range {
                min,
                max,
                steps,
                spacing,
            } => spacing.values(min, max, steps),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Blocker/receiver sizes and `s`, at the first radius.
    pub geometry: GeometryConfig,
    pub radii: Vec<f64>,
    pub rho: RhoSpec,
    pub zeta_db: f64,
    pub thresholds_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub chunk_size: u64,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn grid(&self) -> SweepGrid {
        SweepGrid {
            rho_values: self.rho.values(),
            radii: self.radii.clone(),
            geo_template: self.geometry,
            zeta_db: self.zeta_db,
            trials: self.trials,
            seed: self.seed,
        }
    }
}

/// Parse and validate `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;
    args.validate()
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Args {
    fn validate(self) -> Result<RunConfig, CliError> {
        let finite = |flag: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(usage(format!("--{flag}: {v} is not a finite number")))
            }
        };
        finite("w", self.w)?;
        finite("wr", self.wr)?;
        finite("zeta-db", self.zeta_db)?;
        if self.w <= 0.0 {
            return Err(usage(format!("--w: blocker diameter {} must be positive", self.w)));
        }
        if self.wr < 0.0 {
            return Err(usage(format!("--wr: receiver diameter {} must be >= 0", self.wr)));
        }
        let s = self.s.unwrap_or((self.w + self.wr) / 2.0);
        finite("s", s)?;
        if s < (self.w + self.wr) / 2.0 {
            return Err(usage(format!(
                "--s: minimum blocker distance {s} is below (w + wr)/2 = {}",
                (self.w + self.wr) / 2.0
            )));
        }
        if self.zeta_db > 0.0 {
            return Err(usage(format!(
                "--zeta-db: penetration loss {} dB must be <= 0",
                self.zeta_db
            )));
        }

        let radii = if self.radii.is_empty() {
            match self.mode {
                Mode::Sweep | Mode::Validate => DEFAULT_SWEEP_RADII.to_vec(),
                Mode::Eval | Mode::Outage => vec![DEFAULT_POINT_RADIUS],
            }
        } else {
            self.radii
        };
        let mut geometry = None;
        for &r in &radii {
            finite("radius", r)?;
            if r <= s {
                return Err(usage(format!(
                    "--radius: {r} m must exceed the minimum blocker distance s = {s} m"
                )));
            }
            let geo = GeometryConfig::new(r, self.w, self.wr, s)
                .map_err(|e| usage(format!("--radius {r}: {e}")))?;
            geometry.get_or_insert(geo);
        }
        let geometry = geometry.expect("at least one radius");

        let rho = match self.rho {
            Some(rho) => {
                finite("rho", rho)?;
                if rho < 0.0 {
                    return Err(usage(format!("--rho: intensity {rho} must be >= 0")));
                }
                RhoSpec::Single(rho)
            }
            None => {
                if self.mode == Mode::Eval {
                    return Err(usage("eval needs a single --rho"));
                }
                finite("rho-min", self.rho_min)?;
                finite("rho-max", self.rho_max)?;
                if self.rho_min < 0.0 {
                    return Err(usage(format!("--rho-min: {} must be >= 0", self.rho_min)));
                }
                if self.rho_max < self.rho_min {
                    return Err(usage(format!(
                        "--rho-max: {} is below --rho-min {}",
                        self.rho_max, self.rho_min
                    )));
                }
                if self.rho_steps == 0 {
                    return Err(usage("--rho-steps: must be at least 1"));
                }
                if self.rho_spacing == Spacing::Log && self.rho_min <= 0.0 {
                    return Err(usage("--rho-spacing log: --rho-min must be positive"));
                }
                RhoSpec::Range {
                    min: self.rho_min,
                    max: self.rho_max,
                    steps: self.rho_steps,
                    spacing: self.rho_spacing.into(),
                }
            }
        };

        let thresholds_db = if self.thresholds_db.is_empty() {
            vec![DEFAULT_OUTAGE_THRESHOLD_DB]
        } else {
            self.thresholds_db
        };
        for &t in &thresholds_db {
            finite("threshold-db", t)?;
            if t > 0.0 {
                return Err(usage(format!("--threshold-db: {t} dB must be <= 0")));
            }
        }

        if self.trials == 0 {
            return Err(usage("--trials: must be at least 1"));
        }
        if self.chunk_size == 0 {
            return Err(usage("--chunk-size: must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(usage("--threads: must be at least 1"));
        }

        Ok(RunConfig {
            mode: self.mode,
            geometry,
            radii,
            rho,
            zeta_db: self.zeta_db,
            thresholds_db,
            trials: self.trials,
            seed: self.seed,
            chunk_size: self.chunk_size,
            threads: self.threads,
            out: self.out,
            format: self.format,
        })
    }
}
