//! Set partitions, the refinement order, and zero-sum partition families.
//!
//! The recursive zero-locus formula branches over the family Ψ of partitions
//! that refine a layer's bias partition and whose every block has coefficient
//! sum zero. Only the ≤-minimal (finest) elements of Ψ matter: a finer
//! partition imposes fewer equalities, so its solution set contains that of
//! any coarsening, and the union over Ψ is already achieved by the minimal
//! elements. [`zero_sum_partitions`] returns exactly those, factorizing over
//! the bias partition's blocks so that the enumeration cost is a product of
//! per-block costs instead of a global Bell-number sweep.

use num::Zero;
use thiserror::Error;

use crate::exactlin::Rational;

/// Hard ceiling for [`all_partitions`]; Bell(10) is the largest family the
/// brute-force oracle is allowed to materialize.
pub const ALL_PARTITIONS_LIMIT: usize = 10;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partitions have different ground sets ({left} vs {right} points)")]
    GroundMismatch { left: usize, right: usize },
    #[error("coefficient vector has length {got}, ground set has {expected} points")]
    CoeffLength { expected: usize, got: usize },
    #[error("blocks do not partition the ground set")]
    NotAPartition,
    #[error("ground set of {size} points exceeds the enumeration limit {limit}")]
    EnumerationLimit { size: usize, limit: usize },
}

/// A partition of `{0, …, ground_size−1}` in canonical form: blocks sorted by
/// minimum element, elements sorted within each block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl std::fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", b)?;
        }
        write!(f, "}}")
    }
}

impl SetPartition {
    pub fn new(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; ground_size];
        let mut count = 0;
        for block in &blocks {
            if block.is_empty() {
                return Err(PartitionError::NotAPartition);
            }
            for &x in block {
                if x >= ground_size || seen[x] {
                    return Err(PartitionError::NotAPartition);
                }
                seen[x] = true;
                count += 1;
            }
        }
        if count != ground_size {
            return Err(PartitionError::NotAPartition);
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition {
            ground_size,
            blocks,
        })
    }

    pub fn singletons(ground_size: usize) -> Self {
        SetPartition {
            ground_size,
            blocks: (0..ground_size).map(|i| vec![i]).collect(),
        }
    }

    pub fn one_block(ground_size: usize) -> Self {
        assert!(ground_size > 0, "empty ground set has no one-block partition");
        SetPartition {
            ground_size,
            blocks: vec![(0..ground_size).collect()],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing each point.
    pub fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.ground_size];
        for (i, block) in self.blocks.iter().enumerate() {
            for &x in block {
                owner[x] = i;
            }
        }
        owner
    }

    /// Whether `self` is finer than (refines) `coarser`: every block of
    /// `self` sits inside a block of `coarser`.
    pub fn refines(&self, coarser: &SetPartition) -> Result<bool, PartitionError> {
        if self.ground_size != coarser.ground_size {
            return Err(PartitionError::GroundMismatch {
                left: self.ground_size,
                right: coarser.ground_size,
            });
        }
        let owner = coarser.block_of();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| owner[x] == owner[b[0]])))
    }

    /// Doubles the ground set and replaces each block `Y` by `Y ⊔ Y'`, the
    /// primed copy offset by the original ground size.
    pub fn duplicate(&self) -> SetPartition {
        let n = self.ground_size;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut d: Vec<usize> = b.clone();
                d.extend(b.iter().map(|&x| x + n));
                d
            })
            .collect();
        SetPartition {
            ground_size: 2 * n,
            blocks,
        }
    }
}

/// Enumerates every partition of an `n`-point ground set exactly once, in
/// restricted-growth-string order. Brute-force oracle for the zero-sum
/// enumeration; guarded by [`ALL_PARTITIONS_LIMIT`].
pub fn all_partitions(n: usize) -> Result<PartitionIter, PartitionError> {
    if n > ALL_PARTITIONS_LIMIT {
        return Err(PartitionError::EnumerationLimit {
            size: n,
            limit: ALL_PARTITIONS_LIMIT,
        });
    }
    Ok(PartitionIter {
        n,
        rgs: None,
        done: n == 0,
        emitted_empty: false,
    })
}

/// Iterator over all set partitions via restricted growth strings.
pub struct PartitionIter {
    n: usize,
    rgs: Option<Vec<usize>>,
    done: bool,
    emitted_empty: bool,
}

impl Iterator for PartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.n == 0 {
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(SetPartition {
                ground_size: 0,
                blocks: Vec::new(),
            });
        }
        if self.done {
            return None;
        }
        let rgs = match &mut self.rgs {
            None => {
                self.rgs = Some(vec![0; self.n]);
                self.rgs.as_ref().unwrap()
            }
            Some(rgs) => {
                // Advance to the next restricted growth string: rgs[i] may
                // grow to at most 1 + max(rgs[..i]).
                let mut i = self.n;
                loop {
                    if i == 1 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    let cap = 1 + rgs[..i].iter().copied().max().unwrap_or(0);
                    if rgs[i] < cap {
                        rgs[i] += 1;
                        for v in rgs[i + 1..].iter_mut() {
                            *v = 0;
                        }
                        break;
                    }
                }
                &*rgs
            }
        };
        let block_count = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut blocks = vec![Vec::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        Some(SetPartition {
            ground_size: self.n,
            blocks,
        })
    }
}

/// Minimal elements of the zero-sum family
/// `Ψ = {Q ≤ base : Σ_{i∈B} coeffs[i] = 0 for every block B of Q}`.
///
/// Factorizes over the base partition's blocks: within each block the atomic
/// zero-sum sub-blocks (zero-sum with no proper nonempty zero-sum subset) are
/// enumerated, and minimal elements of the product poset are products of
/// per-block minimal elements. Returns the empty list iff Ψ is empty.
pub fn zero_sum_partitions(
    coeffs: &[Rational],
    base: &SetPartition,
) -> Result<Vec<SetPartition>, PartitionError> {
    if coeffs.len() != base.ground_size() {
        return Err(PartitionError::CoeffLength {
            expected: base.ground_size(),
            got: coeffs.len(),
        });
    }
    let mut per_block: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(base.block_count());
    for block in base.blocks() {
        let family = minimal_zero_sum_block_partitions(block, coeffs);
        if family.is_empty() {
            return Ok(Vec::new());
        }
        per_block.push(family);
    }
    // Cross product across base blocks, deterministic lexicographic order.
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_block.len()];
    loop {
        let mut blocks = Vec::new();
        for (family, &pick) in per_block.iter().zip(&choice) {
            blocks.extend(family[pick].iter().cloned());
        }
        out.push(SetPartition::new(base.ground_size(), blocks).expect("blocks partition the ground"));
        let mut i = per_block.len();
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < per_block[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// All partitions of one base block into atomic zero-sum sub-blocks.
///
/// A sub-block is atomic when its coefficients sum to zero and no proper
/// nonempty subset sums to zero; partitions into atomic sub-blocks are
/// exactly the ≤-minimal zero-sum partitions of the block.
fn minimal_zero_sum_block_partitions(
    block: &[usize],
    coeffs: &[Rational],
) -> Vec<Vec<Vec<usize>>> {
    let zeros: Vec<usize> = block.iter().copied().filter(|&i| coeffs[i].is_zero()).collect();
    let nonzero: Vec<usize> = block
        .iter()
        .copied()
        .filter(|&i| !coeffs[i].is_zero())
        .collect();
    let total: Rational = nonzero.iter().map(|&i| coeffs[i].clone()).sum();
    if !total.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut acc: Vec<Vec<usize>> = zeros.iter().map(|&z| vec![z]).collect();
    cover_with_atomic_blocks(&nonzero, coeffs, &mut acc, &mut out);
    out
}

fn cover_with_atomic_blocks(
    remaining: &[usize],
    coeffs: &[Rational],
    acc: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some((&first, rest)) = remaining.split_first() else {
        out.push(acc.clone());
        return;
    };
    // Every atomic zero-sum subset containing the first uncovered element.
    let mut chosen = vec![first];
    let mut sum = coeffs[first].clone();
    extend_block(rest, coeffs, &mut chosen, &mut sum, &mut |block| {
        let rest_remaining: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|i| !block.contains(i))
            .collect();
        acc.push(block.to_vec());
        cover_with_atomic_blocks(&rest_remaining, coeffs, acc, out);
        acc.pop();
    });
}

fn extend_block(
    candidates: &[usize],
    coeffs: &[Rational],
    chosen: &mut Vec<usize>,
    sum: &mut Rational,
    emit: &mut impl FnMut(&[usize]),
) {
    if sum.is_zero() && is_atomic(chosen, coeffs) {
        emit(chosen);
        // An atomic block cannot be extended into another atomic block: any
        // zero-sum superset would contain this zero-sum proper subset.
        return;
    }
    for (pos, &c) in candidates.iter().enumerate() {
        chosen.push(c);
        *sum += &coeffs[c];
        extend_block(&candidates[pos + 1..], coeffs, chosen, sum, emit);
        *sum -= &coeffs[c];
        chosen.pop();
    }
}

fn is_atomic(block: &[usize], coeffs: &[Rational]) -> bool {
    // Proper nonempty zero-sum subsets come in complementary pairs, so it is
    // enough to scan subsets containing the first element.
    let n = block.len();
    if n <= 1 {
        return true;
    }
    let full: u64 = (1 << n) - 1;
    let mut mask: u64 = 1;
    while mask < full {
        if mask & 1 == 1 {
            let mut s = Rational::zero();
            for (i, &b) in block.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s += &coeffs[b];
                }
            }
            if s.is_zero() {
                return false;
            }
        }
        mask += 2; // keep bit 0 set
    }
    true
}
