//! The recursive zero-locus engine.
//!
//! For a neural space with complete-bias hidden layers and a null-bias final
//! layer spanned by generators `φ^{d,h}`, the zero locus satisfies
//!
//! ```text
//! I(N(M₁,…,M_d)) = ⋂_{h,k} ⋃_{Q ∈ Ψ_{h,k}} ⋂_{P ∈ Q; i,j ∈ P} I(N(M₁,…,M_{d−2},(M_{d−1})_{ij}))
//! ```
//!
//! where `Ψ_{h,k}` ranges over partitions refining the last hidden layer's
//! bias partition whose blocks have zero coefficient sum under the row
//! `(φ^{d,h})_k`, and `(M_{d−1})_{ij}` collects the scalar layers
//! `x ↦ πᵢφ(x) − πⱼφ(x)`. At depth one the zero locus is the common kernel
//! of the stacked generators. Three structural facts keep the recursion
//! tractable:
//!
//! * only the ≤-minimal elements of `Ψ_{h,k}` are enumerated (coarser
//!   partitions give smaller sets, absorbed by the union);
//! * within a block the pair constraints are equalities, so the star pairs
//!   `(min(B), j)` suffice;
//! * the `(prefix, {i,j})` subproblems repeat massively across branches and
//!   are memoized, with `{i,j}` unordered since negating the difference
//!   generators leaves the kernel unchanged.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num::Zero;

use super::relations::{IdentificationRelation, RelationStats};
use super::twin::twin_transform;
use super::SeparationError;
use crate::equivariant::{Architecture, LayerSpace};
use crate::exactlin::{RatMatrix, Rational, Subspace, SubspaceUnion};

/// Resource guards for one engine run. Exceeding either aborts
/// deterministically with diagnostics instead of thrashing.
#[derive(Debug, Clone)]
pub struct EngineLimits {
    /// Cap on the member count of any intermediate subspace union.
    pub max_union_members: usize,
    /// Cap on the largest bias-partition block handed to the zero-sum
    /// partition enumerator.
    pub max_block_size: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits {
            max_union_members: 10_000,
            max_block_size: 12,
        }
    }
}

/// Counters reported alongside every computed relation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineStats {
    /// Number of `zero_locus` invocations, memoized hits excluded.
    pub nodes: u64,
    pub memo_hits: u64,
    pub memo_entries: u64,
}

/// Cache of coordinate-difference subproblems, keyed by prefix depth and the
/// unordered coordinate pair.
#[derive(Debug, Default)]
pub struct MemoTable {
    map: HashMap<(usize, (usize, usize)), SubspaceUnion>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, depth: usize, pair: (usize, usize)) -> Option<&SubspaceUnion> {
        self.map.get(&(depth, normalize_pair(pair)))
    }

    fn insert(&mut self, depth: usize, pair: (usize, usize), value: SubspaceUnion) {
        self.map.insert((depth, normalize_pair(pair)), value);
    }
}

fn normalize_pair((i, j): (usize, usize)) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Zero locus of the neural space with hidden `layers` and null-bias final
/// layer spanned by `final_gens`, as a canonical subspace union of the
/// input space.
pub fn zero_locus(
    layers: &[LayerSpace],
    final_gens: &[RatMatrix],
    limits: &EngineLimits,
    memo: &mut MemoTable,
    stats: &mut EngineStats,
) -> Result<SubspaceUnion, SeparationError> {
    stats.nodes += 1;
    let ambient = if let Some(first) = layers.first() {
        first.source().dim()
    } else {
        final_gens.first().map_or(0, RatMatrix::cols)
    };

    let Some((last, prefix)) = layers.split_last() else {
        // Depth one: the common kernel of the stacked generators.
        let stacked = RatMatrix::vstack(&final_gens.iter().collect::<Vec<_>>());
        return Ok(SubspaceUnion::singleton(Subspace::nullspace(&if stacked
            .rows()
            == 0
        {
            RatMatrix::zeros(0, ambient)
        } else {
            stacked
        })));
    };

    let hidden_dim = last.target().dim();
    let partition = last.bias().partition().ok_or_else(|| {
        SeparationError::InvalidQuery(
            "zero locus recursion requires complete bias on hidden layers".into(),
        )
    })?;
    if let Some(block) = partition
        .blocks()
        .iter()
        .find(|b| b.len() > limits.max_block_size)
    {
        return Err(SeparationError::Resource {
            detail: format!(
                "bias partition block of size {} exceeds --max-block-size {}",
                block.len(),
                limits.max_block_size
            ),
            stats: stats.clone(),
        });
    }

    // Distinct coefficient rows across all (generator, output coordinate)
    // branches, scaled so the first nonzero entry is one: proportional rows
    // have identical zero-sum families and recursions.
    let mut rows: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
    for gen in final_gens {
        debug_assert_eq!(gen.cols(), hidden_dim, "final generator width mismatch");
        for k in 0..gen.rows() {
            let row = gen.row(k);
            if let Some(first) = row.iter().find(|e| !e.is_zero()) {
                let inv = Rational::new(
                    first.denom().clone(),
                    first.numer().clone(),
                );
                let canonical: Vec<Rational> = row.iter().map(|e| e * &inv).collect();
                rows.insert(canonical, ());
            }
            // All-zero rows impose no constraint.
        }
    }

    let mut branch_unions: Vec<SubspaceUnion> = Vec::with_capacity(rows.len());
    for coeffs in rows.keys() {
        let psis = crate::partitions::zero_sum_partitions(coeffs, partition)?;
        if psis.is_empty() {
            // No zero-sum refinement: this branch's union is empty, and so
            // is the whole intersection.
            return Ok(SubspaceUnion::empty(ambient));
        }
        let mut branch = SubspaceUnion::empty(ambient);
        for q in &psis {
            let mut meet = SubspaceUnion::full(ambient);
            'blocks: for block in q.blocks() {
                if block.len() < 2 {
                    continue;
                }
                let anchor = block[0];
                for &j in &block[1..] {
                    let sub = pair_locus(prefix, last, (anchor, j), limits, memo, stats)?;
                    meet = meet.intersect(&sub)?;
                    check_members(&meet, limits, stats)?;
                    if meet.is_empty_set() {
                        break 'blocks;
                    }
                }
            }
            branch = branch.union(&meet)?;
            check_members(&branch, limits, stats)?;
        }
        branch_unions.push(branch);
    }

    // Fold the ⋂ over branches smallest-first; absorption keeps the
    // intermediate unions canonical after every step.
    branch_unions.sort_by_key(SubspaceUnion::member_count);
    let mut result = SubspaceUnion::full(ambient);
    for branch in branch_unions {
        result = result.intersect(&branch)?;
        check_members(&result, limits, stats)?;
        if result.is_empty_set() {
            break;
        }
    }
    Ok(result)
}

/// Memoized zero locus of the prefix architecture with the final layer
/// replaced by the coordinate-difference functionals
/// `{x ↦ πᵢφ(x) − πⱼφ(x) : φ generator of λ(last)}`.
fn pair_locus(
    prefix: &[LayerSpace],
    last: &LayerSpace,
    pair: (usize, usize),
    limits: &EngineLimits,
    memo: &mut MemoTable,
    stats: &mut EngineStats,
) -> Result<SubspaceUnion, SeparationError> {
    let depth = prefix.len();
    if let Some(hit) = memo.get(depth, pair) {
        stats.memo_hits += 1;
        return Ok(hit.clone());
    }
    let (i, j) = pair;
    let src_dim = last.source().dim();
    let rows: Vec<Vec<Rational>> = last
        .linear_generators()
        .generators()
        .iter()
        .map(|phi| {
            (0..src_dim)
                .map(|c| phi.get(i, c) - phi.get(j, c))
                .collect()
        })
        .collect();
    let diff = if rows.is_empty() {
        RatMatrix::zeros(0, src_dim)
    } else {
        RatMatrix::from_rows(rows)
    };
    let value = zero_locus(prefix, &[diff], limits, memo, stats)?;
    memo.insert(depth, pair, value.clone());
    stats.memo_entries = memo.len() as u64;
    Ok(value)
}

fn check_members(
    u: &SubspaceUnion,
    limits: &EngineLimits,
    stats: &EngineStats,
) -> Result<(), SeparationError> {
    if u.member_count() > limits.max_union_members {
        return Err(SeparationError::Resource {
            detail: format!(
                "union grew to {} members, --max-union-members is {}",
                u.member_count(),
                limits.max_union_members
            ),
            stats: stats.clone(),
        });
    }
    Ok(())
}

/// The identification relation of an architecture: the zero locus of its
/// twin, with provenance digest and engine statistics.
pub fn rho(
    arch: &Architecture,
    limits: &EngineLimits,
) -> Result<IdentificationRelation, SeparationError> {
    let start = Instant::now();
    let twin = twin_transform(arch)?;
    let mut memo = MemoTable::new();
    let mut stats = EngineStats::default();
    let relation = zero_locus(
        &twin.layers,
        &twin.final_generators,
        limits,
        &mut memo,
        &mut stats,
    )?;
    Ok(IdentificationRelation {
        relation,
        architecture_digest: arch.digest(),
        stats: RelationStats {
            nodes: stats.nodes,
            memo_hits: stats.memo_hits,
            memo_entries: memo.len() as u64,
            wall: start.elapsed(),
        },
    })
}
