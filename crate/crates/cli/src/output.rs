//! CSV/JSON serialization of sweep and outage results.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use blockage::units::linear_to_db;
use blockage::SweepRecord;
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::CliError;

pub const CSV_HEADER: [&str; 12] = [
    "rho",
    "r",
    "theory_paper_db",
    "theory_exact_db",
    "sim_mean_db",
    "sim_ci95_low_db",
    "sim_ci95_high_db",
    "abs_err",
    "rel_err",
    "within_ci",
    "trials",
    "seed",
];

/// One output row; `_db` fields are `10 log10` of the linear values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub rho: f64,
    pub r: f64,
    pub theory_paper_db: f64,
    pub theory_exact_db: f64,
    pub sim_mean_db: f64,
    pub sim_ci95_low_db: f64,
    pub sim_ci95_high_db: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub within_ci: bool,
    pub trials: u64,
    pub seed: u64,
}

impl From<&SweepRecord> for ResultRow {
    fn from(rec: &SweepRecord) -> Self {
        ResultRow {
            rho: rec.rho,
            r: rec.r,
            theory_paper_db: linear_to_db(rec.theory_paper),
            theory_exact_db: linear_to_db(rec.theory_exact),
            sim_mean_db: linear_to_db(rec.sim_mean),
            sim_ci95_low_db: linear_to_db(rec.sim_ci95_low),
            sim_ci95_high_db: linear_to_db(rec.sim_ci95_high),
            abs_err: rec.abs_err,
            rel_err: rec.rel_err,
            within_ci: rec.within_ci,
            trials: rec.trials,
            seed: rec.seed,
        }
    }
}

impl ResultRow {
    fn csv_fields(&self) -> [String; 12] {
        [
            self.rho.to_string(),
            self.r.to_string(),
            self.theory_paper_db.to_string(),
            self.theory_exact_db.to_string(),
            self.sim_mean_db.to_string(),
            self.sim_ci95_low_db.to_string(),
            self.sim_ci95_high_db.to_string(),
            self.abs_err.to_string(),
            self.rel_err.to_string(),
            self.within_ci.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// Outage probability at one `(rho, r, threshold)` point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutageRow {
    pub rho: f64,
    pub r: f64,
    pub threshold_db: f64,
    pub theory: f64,
    pub sim: f64,
    pub sim_std_error: f64,
    pub within_3se: bool,
    pub trials: u64,
    pub seed: u64,
}

pub const OUTAGE_CSV_HEADER: [&str; 9] = [
    "rho",
    "r",
    "threshold_db",
    "theory",
    "sim",
    "sim_std_error",
    "within_3se",
    "trials",
    "seed",
];

impl OutageRow {
    fn csv_fields(&self) -> [String; 9] {
        [
            self.rho.to_string(),
            self.r.to_string(),
            self.threshold_db.to_string(),
            self.theory.to_string(),
            self.sim.to_string(),
            self.sim_std_error.to_string(),
            self.within_3se.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
        ]
    }
}

fn csv_error(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::Io {
            path: "<csv>".into(),
            source: io,
        },
        other => CliError::Serialize(format!("{other:?}")),
    }
}

fn write_csv<W: Write, const N: usize>(
    header: [&str; N],
    rows: impl Iterator<Item = [String; N]>,
    writer: W,
) -> Result<(), CliError> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    out.write_record(header).map_err(csv_error)?;
    for row in rows {
        out.write_record(&row).map_err(csv_error)?;
    }
    out.flush().map_err(|source| CliError::Io {
        path: "<csv>".into(),
        source,
    })
}

fn write_json<W: Write, T: Serialize>(rows: &[T], mut writer: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut writer, rows)
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    writer.write_all(b"\n").map_err(|source| CliError::Io {
        path: "<json>".into(),
        source,
    })
}

/// Serialize sweep records, preserving their order.
pub fn write_results<W: Write>(
    records: &[SweepRecord],
    format: Format,
    writer: W,
) -> Result<(), CliError> {
    let rows: Vec<ResultRow> = records.iter().map(ResultRow::from).collect();
    write_rows(&rows, format, writer)
}

pub fn write_rows<W: Write>(rows: &[ResultRow], format: Format, writer: W) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(CSV_HEADER, rows.iter().map(ResultRow::csv_fields), writer),
        Format::Json => write_json(rows, writer),
    }
}

pub fn write_outage<W: Write>(rows: &[OutageRow], format: Format, writer: W) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(OUTAGE_CSV_HEADER, rows.iter().map(OutageRow::csv_fields), writer),
        Format::Json => write_json(rows, writer),
    }
}

/// Write to `path`, or stdout when `None`. I/O errors carry the path.
pub fn with_output<F>(path: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    let attach_path = |e: CliError, p: &Path| match e {
        CliError::Io { source, .. } => CliError::Io {
            path: p.to_path_buf(),
            source,
        },
        other => other,
    };
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            let mut buf = BufWriter::new(file);
            write(&mut buf).map_err(|e| attach_path(e, p))?;
            buf.flush().map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(|e| attach_path(e, Path::new("<stdout>")))
        }
    }
}

/// Emit sweep records to `path` (or stdout).
pub fn emit_results(
    records: &[SweepRecord],
    format: Format,
    path: Option<&Path>,
) -> Result<(), CliError> {
    if records.is_empty() {
        return Err(CliError::Usage("no records to emit".into()));
    }
    with_output(path, |w| write_results(records, format, w))
}
