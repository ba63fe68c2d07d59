//! Exhaustive and sampled enumeration of coloured tournaments, and the
//! verification campaigns run over them.

pub mod campaign;
pub mod ops;
pub mod spec;

use thiserror::Error;

use crate::auditor::AuditError;

pub use campaign::{merge_shards, run, Campaign, CampaignResult, Counts, Found, RunOptions, Tally, Telemetry};
pub use ops::{audit_campaign, estimate_f, search_pattern, verify_conjecture, verify_ssw2};
pub use spec::{
    enumerate, parse_pattern, ColourCount, EnumerationSpec, Filter, Instances, Mode, Shard, DEFAULT_BUDGET,
    DEFAULT_SEED,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{}", budget_message(*.space, *.budget))]
    BudgetExceeded { space: Option<u64>, budget: u64 },
    #[error("invalid shard {index}/{count}")]
    InvalidShard { index: u64, count: u64 },
    #[error("shard must look like K/M, got {0:?}")]
    BadShard(String),
    #[error("order {0} is outside 1..=32")]
    BadOrder(usize),
    #[error("order {order} is not a multiple of the pattern period {period}")]
    PatternPeriod { order: usize, period: usize },
    #[error("bad colour pattern {0:?}")]
    BadPattern(String),
    #[error("canonical mode cannot be combined with a fixed cycle pattern")]
    CanonicalWithPattern,
    #[error("canonical mode supports order at most {max}, got {n}")]
    CanonicalOrder { n: usize, max: usize },
    #[error("this campaign needs {expected} colours")]
    WrongColourCount { expected: usize },
    #[error("cover size cap must be at least 1")]
    ZeroKMax,
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error("results come from different campaigns or overlapping shards")]
    IncompatibleMerge,
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

fn budget_message(space: Option<u64>, budget: u64) -> String {
    match space {
        Some(s) => format!("exhaustive space of {s} instances exceeds the budget of {budget}; use sampled mode"),
        None => format!("exhaustive space exceeds 2^64, far over the budget of {budget}; use sampled mode"),
    }
}
