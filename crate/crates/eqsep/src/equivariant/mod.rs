//! Permutation representations, bases of equivariant linear maps, layer
//! spaces, and architecture builders.
//!
//! Two independent constructions of `Hom_G(V, W)` are kept side by side: the
//! commutant solver ([`commutant_basis`]), which works for any pair of
//! permutation representations, and the double-coset construction
//! ([`double_coset_basis`]) for maps between coset representations. Each is
//! the other's test oracle — their spans must agree wherever both apply.

mod basis;
mod layer;
mod rep;

pub use basis::{commutant_basis, double_coset_basis, invariant_basis, EquivariantBasis};
pub use layer::{
    circular_layer, full_layer, ign_layer, orbit_partition, Architecture, BiasSpec, LayerSpace,
};
pub use rep::PermRep;

use thiserror::Error;

use crate::groups::GroupError;
use crate::partitions::PartitionError;

#[derive(Debug, Clone, Error)]
pub enum EquivariantError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("generator {index} is not equivariant")]
    NotEquivariant { index: usize },
    #[error("generator {index} has shape {got_rows}x{got_cols}, expected {rows}x{cols}")]
    BadShape {
        index: usize,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("generators are linearly dependent (rank {rank} of {count})")]
    DependentGenerators { rank: usize, count: usize },
    #[error("bias partition part {part} is not a union of orbits")]
    BiasNotOrbitUnion { part: usize },
    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),
    #[error("circular filter size {k} out of range 1..={n}")]
    FilterSize { k: usize, n: usize },
    #[error("representation of dimension {dim} exceeds the size cap {cap}")]
    SizeCap { dim: usize, cap: usize },
}
