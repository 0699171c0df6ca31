use thiserror::Error;

pub type Result<T, E = BlockageError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BlockageError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    /// `r - s` is too small for the distance CDF and cover probability
    /// denominators to be meaningful.
    #[error("degenerate geometry: r - s = {separation:e} m is below the minimum {min:e} m")]
    Degenerate { separation: f64, min: f64 },

    #[error("{what} = {value} outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("sampled {count} blockers, above the cap of {cap}; parameters are implausible")]
    TooManyBlockers { count: u64, cap: u64 },

    #[error("invalid simulation settings: {0}")]
    InvalidSettings(String),

    #[error("sweep cell {index} (rho = {rho}, r = {r}) failed: {source}")]
    Cell {
        index: usize,
        rho: f64,
        r: f64,
        #[source]
        source: Box<BlockageError>,
    },
}

impl BlockageError {
    pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Self {
        BlockageError::Domain {
            what,
            value,
            domain: domain.into(),
        }
    }
}
