//! Constructive procedures and necessary conditions for minimal
//! counterexamples, and the audit that runs all of them on one instance.

pub mod cycle;
pub mod hamilton;
pub mod partition;
pub mod report;
mod recheck;

use thiserror::Error;

use crate::vertex_set::VertexSet;

pub use cycle::CycleView;
pub use hamilton::{
    elimination_order, genhamilton_check, non_domination_cycle, GenHamilton, NoQualifyingCycle,
    MAX_GENHAMILTON_ORDER,
};
pub use partition::{
    colour_profile_partition, descent_check, descent_from, profile_on_cycle, ColourProfilePartition, DescentTrace, LemmaOutcome,
    ProfileClass, Renaming,
};
pub use report::{audit, AuditReport, Check, Finding, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("vertex {0} dominates every other vertex")]
    HasDominatingVertex(usize),
    #[error("no vertex dominates the induced subtournament on {0}")]
    NoDominatingVertexIn(VertexSet),
    #[error("order {n} exceeds the Hamilton search limit of {max}")]
    OrderLimit { n: usize, max: usize },
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("cycle is not a qualifying Hamilton cycle")]
    NotQualifying,
    #[error("pivot {0} is incident with all three colours")]
    PivotMeetsAllColours(usize),
    #[error("pivot {0}: no m in B_b+ and n in R_r- with m != n+")]
    DescentPrecondition(usize),
}
