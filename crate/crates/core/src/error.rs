use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by the table builders, statistics, and cache I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A requested sieve limit is zero or exceeds the configured maximum.
    #[error("limit {limit} outside supported range 1..={max}")]
    LimitOutOfRange { limit: u64, max: u64 },

    /// An index or checkpoint lies outside the range a table covers.
    #[error("index {index} out of range for table limit {limit}")]
    IndexOutOfRange { index: u64, limit: u64 },

    /// An argument violates a mathematical domain requirement.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two tables that must describe the same data disagree.
    #[error("inconsistent tables: {0}")]
    InconsistentTables(String),

    /// A Monte Carlo request exceeds the configured step budget.
    #[error("requested {requested} walk steps, budget is {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    /// A statistic was asked of an empty sample.
    #[error("empty sample")]
    EmptySample,

    /// Ensemble snapshots do not cover a requested checkpoint.
    #[error("checkpoint {0} not covered by the ensemble")]
    CheckpointMismatch(u64),

    /// A cache file failed header or payload validation.
    #[error("cache format error: {0}")]
    CacheFormat(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
