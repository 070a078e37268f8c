//! Exact separation-power analysis for equivariant neural networks over
//! finite permutation groups.
//!
//! A family of networks `N` *identifies* two inputs `α, β` when every network
//! in the family maps them to the same output. This crate computes the full
//! identification relation `ρ(N)` — symbolically and exactly — for neural
//! spaces whose layers are spaces of equivariant affine maps between
//! permutation representations of a finite group. The computation reduces the
//! separation question to a zero-locus question on a *twin network* acting on
//! the doubled input space, then solves that recursively over the network
//! depth; the result is a finite union of rational linear subspaces of
//! `V₀ ⊕ V₀` in canonical form.
//!
//! The crate is organized around that pipeline:
//!
//! * [`exactlin`] — arbitrary-precision rational matrices, reduced row
//!   echelon forms, and the lattice of finite unions of linear subspaces.
//! * [`groups`] — concrete finite permutation groups, subgroups, coset and
//!   double-coset spaces, and finite G-sets with orbit decompositions.
//! * [`partitions`] — set partitions, the refinement order, and enumeration
//!   of minimal zero-sum partitions (the combinatorial core of the engine).
//! * [`equivariant`] — permutation representations, bases of equivariant
//!   linear maps (commutant and double-coset constructions), layer spaces,
//!   and architecture builders for CNN- and IGN-style models.
//! * [`separation`] — the twin-network transform, the memoized recursive
//!   zero-locus engine, and comparison/verification drivers for depth,
//!   width, and representation-hierarchy laws.
//! * [`empirical`] — floating-point network sampling, a Monte Carlo
//!   separation oracle that cross-validates symbolic verdicts, and
//!   Weisfeiler-Leman color refinement for graph sanity checks.
//! * [`config`], [`report`], [`cli`] — JSON architecture configs, report
//!   serialization, and the command-line drivers used by the `eqsep` binary.
//! * [`suites`] — the named verification suites behind `eqsep verify`, each
//!   checking one separation-power law on its canonical small instances.
//!
//! # Example
//!
//! Shallow networks with a regular hidden representation identify exactly the
//! pairs lying in a common `H`-orbit:
//!
//! ```
//! use eqsep::equivariant::PermRep;
//! use eqsep::groups::{Group, Subgroup};
//! use eqsep::separation::{h_orbit_relation, rho, shallow_regular_arch, EngineLimits};
//!
//! let g = Group::cyclic(3);
//! let h = Subgroup::full(&g);
//! let arch = shallow_regular_arch(&g, &h, "relu").unwrap();
//! let relation = rho(&arch, &EngineLimits::default()).unwrap();
//!
//! let expected = h_orbit_relation(&h, &PermRep::regular(&g)).unwrap();
//! assert!(relation.relation.eq_as_sets(&expected).unwrap());
//! ```
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod cli;
pub mod config;
pub mod empirical;
pub mod equivariant;
pub mod exactlin;
pub mod groups;
pub mod partitions;
pub mod report;
pub mod separation;
pub mod suites;
