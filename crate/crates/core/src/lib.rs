//! Monochromatic domination in 3-edge-coloured tournaments: reachability,
//! rainbow triangles, covers, structural audits of candidate minimal
//! counterexamples, and exhaustive or sampled search campaigns.

pub mod auditor;
pub mod canonical;
pub mod colour;
pub mod domination;
pub mod search;
pub mod tournament;
pub mod vertex_set;

pub use colour::{Colour, ColourSet};
pub use domination::{
    dominated_by_all, dominates, dominating_vertices, domination_relation, find_rainbow_triangle, min_cover,
    CoverOutcome, DominationCover, DominationRelation, EngineError, RainbowTriangle,
};
pub use tournament::{ColouredTournament, TournamentError};
pub use vertex_set::{VertexSet, MAX_ORDER};
