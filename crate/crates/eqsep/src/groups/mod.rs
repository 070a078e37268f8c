//! Concrete finite permutation groups and the combinatorics built on them:
//! subgroups, coset and double-coset spaces, and finite G-sets with orbit
//! decompositions.
//!
//! Every group here is realized faithfully as a set of permutations of a
//! finite ground set, with elements kept in a canonical lexicographic order
//! so that two constructions of the same group are structurally equal and
//! every downstream basis is reproducible.

mod coset;
mod group;
mod gset;
mod perm;

pub use coset::{cosets, double_cosets, CosetSpace, DoubleCosetSpace};
pub use group::{all_subgroups, Group, Subgroup};
pub use gset::GSet;
pub use perm::Permutation;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("images {0:?} are not a bijection of the ground set")]
    NotABijection(Vec<usize>),
    #[error("permutations act on ground sets of different sizes ({left} vs {right})")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("permutation is not an element of the group")]
    NotAnElement,
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("not a group action: {0}")]
    InvalidAction(String),
    #[error("group of order {order} exceeds the limit {limit} for {what}")]
    TooLarge {
        order: usize,
        limit: usize,
        what: &'static str,
    },
}
