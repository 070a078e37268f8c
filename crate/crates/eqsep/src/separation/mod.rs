//! The twin-network transform, the recursive zero-locus engine, and the
//! relation-level queries and verification drivers built on it.
//!
//! The pipeline: [`twin_transform`] turns a separation question about an
//! architecture into a zero-locus question about a twin architecture on the
//! doubled input space; [`zero_locus`] solves that recursively over depth,
//! branching over minimal zero-sum partitions of each layer's bias partition
//! and memoizing the coordinate-difference subproblems; [`rho`] composes the
//! two and packages the result with provenance and engine statistics.
//!
//! The symbolic result is independent of the activation function (any
//! non-polynomial activation yields the same relation), which is reflected
//! structurally: nothing in this module reads the architecture's activation
//! tag.

mod engine;
mod relations;
mod twin;
mod verify;

pub use engine::{rho, zero_locus, EngineLimits, EngineStats, MemoTable};
pub use relations::{
    compare, diagonal_subspace, graph_subspace, h_orbit_relation, identifies,
    permutation_relation, swap_matrix, Comparison, IdentificationRelation, RelationStats,
};
pub use twin::{twin_transform, TwinArchitecture};
pub use verify::{
    cnn_arch, depth_stabilization_threshold, shallow_hidden_arch, shallow_regular_arch,
    verify_split_invariance, verify_subgroup_hierarchy, verify_width_invariance,
    StabilizationOutcome,
};

use thiserror::Error;

use crate::equivariant::EquivariantError;
use crate::exactlin::ExactLinError;
use crate::groups::GroupError;
use crate::partitions::PartitionError;

#[derive(Debug, Clone, Error)]
pub enum SeparationError {
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error(transparent)]
    ExactLin(#[from] ExactLinError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("resource limit exceeded: {detail} (nodes {}, memo hits {})", stats.nodes, stats.memo_hits)]
    Resource {
        detail: String,
        stats: EngineStats,
    },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}
