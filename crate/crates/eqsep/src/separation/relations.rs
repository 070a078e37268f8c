//! Identification relations and relation-level queries.

use std::time::Duration;

use num::One;

use super::SeparationError;
use crate::equivariant::PermRep;
use crate::exactlin::{RatMatrix, Rational, Subspace, SubspaceUnion};
use crate::groups::Subgroup;

/// Factorial guard for [`permutation_relation`].
pub const PERMUTATION_RELATION_LIMIT: usize = 6;

/// Engine counters attached to a computed relation.
#[derive(Debug, Clone)]
pub struct RelationStats {
    pub nodes: u64,
    pub memo_hits: u64,
    pub memo_entries: u64,
    pub wall: Duration,
}

/// The computed identification relation `ρ(N)` of an architecture: a
/// canonical union of subspaces of the pair space `V₀ ⊕ V₀`, with the
/// architecture digest for cache validation and the engine statistics.
#[derive(Debug, Clone)]
pub struct IdentificationRelation {
    pub relation: SubspaceUnion,
    pub architecture_digest: String,
    pub stats: RelationStats,
}

impl IdentificationRelation {
    /// Input dimension of the underlying architecture; the relation lives in
    /// twice this.
    pub fn input_dim(&self) -> usize {
        self.relation.ambient_dim() / 2
    }

    /// Reflexivity: the diagonal `{(β, β)}` must always be identified.
    pub fn contains_diagonal(&self) -> Result<bool, SeparationError> {
        let diag = diagonal_subspace(self.input_dim());
        Ok(self.relation.contains_subspace(&diag)?)
    }

    /// Symmetry: swapping the two halves of the pair space fixes the
    /// relation.
    pub fn swap_invariant(&self) -> Result<bool, SeparationError> {
        let swapped = self.relation.transform(&swap_matrix(self.input_dim()))?;
        Ok(swapped == self.relation)
    }

    /// Equivariance: `(g ⊕ g)` fixes the relation for every group generator.
    pub fn equivariant_under(&self, input_rep: &PermRep) -> Result<bool, SeparationError> {
        if input_rep.dim() != self.input_dim() {
            return Err(SeparationError::InvalidQuery(format!(
                "relation is over pairs of dimension {}, representation has {}",
                self.input_dim(),
                input_rep.dim()
            )));
        }
        for &g in input_rep.group().generator_indices() {
            let m = input_rep.matrix(g);
            let doubled = RatMatrix::block_diag(&m, &m);
            if self.relation.transform(&doubled)? != self.relation {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Runs all three structural invariants, returning the first failure.
    pub fn check_invariants(&self, input_rep: &PermRep) -> Result<(), SeparationError> {
        if !self.contains_diagonal()? {
            return Err(SeparationError::InvalidQuery(
                "relation does not contain the diagonal".into(),
            ));
        }
        if !self.swap_invariant()? {
            return Err(SeparationError::InvalidQuery(
                "relation is not swap-symmetric".into(),
            ));
        }
        if !self.equivariant_under(input_rep)? {
            return Err(SeparationError::InvalidQuery(
                "relation is not equivariant under the diagonal action".into(),
            ));
        }
        Ok(())
    }
}

/// `{(β, β)} ⊂ ℚ^{2n}`: the kernel of `[I | −I]`.
pub fn diagonal_subspace(n: usize) -> Subspace {
    let id = RatMatrix::identity(n);
    Subspace::nullspace(&RatMatrix::hstack(&id, &id.neg()))
}

/// The involution `(α, β) ↦ (β, α)` on the pair space.
pub fn swap_matrix(n: usize) -> RatMatrix {
    RatMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if (r < n && c == r + n) || (r >= n && c == r - n) {
            Rational::one()
        } else {
            num::Zero::zero()
        }
    })
}

/// The graph `{(β, m·β)}` of a square matrix: the kernel of `[m | −I]`.
pub fn graph_subspace(m: &RatMatrix) -> Subspace {
    assert_eq!(m.rows(), m.cols(), "graphs need square maps");
    let id = RatMatrix::identity(m.rows());
    Subspace::nullspace(&RatMatrix::hstack(m, &id.neg()))
}

/// `⋃_{h ∈ H} graph(ρ(h))`: the pairs lying in a common `H`-orbit. The
/// independent construction of the relation computed by shallow networks
/// with regular hidden representations.
pub fn h_orbit_relation(h: &Subgroup, rep: &PermRep) -> Result<SubspaceUnion, SeparationError> {
    if !crate::groups::Group::same_group(h.parent(), rep.group()) {
        return Err(crate::groups::GroupError::GroupMismatch.into());
    }
    let members = h
        .members()
        .iter()
        .map(|&e| graph_subspace(&rep.matrix(e)))
        .collect();
    Ok(SubspaceUnion::normalize(2 * rep.dim(), members)?)
}

/// `⋃_{σ ∈ S_n} graph(P_σ)` in ambient `2n`: the pairs equal up to an
/// arbitrary coordinate permutation.
pub fn permutation_relation(n: usize) -> Result<SubspaceUnion, SeparationError> {
    if n == 0 || n > PERMUTATION_RELATION_LIMIT {
        return Err(SeparationError::InvalidQuery(format!(
            "permutation relation is guarded to 1..={PERMUTATION_RELATION_LIMIT} (got {n})"
        )));
    }
    let g = crate::groups::Group::symmetric(n);
    let rep = PermRep::natural(&g);
    let members = (0..g.order())
        .map(|e| graph_subspace(&rep.matrix(e)))
        .collect();
    Ok(SubspaceUnion::normalize(2 * n, members)?)
}

/// Whether the relation identifies the exact rational pair `(alpha, beta)`.
pub fn identifies(
    rel: &IdentificationRelation,
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<bool, SeparationError> {
    let n = rel.input_dim();
    if alpha.len() != n || beta.len() != n {
        return Err(SeparationError::InvalidQuery(format!(
            "inputs must have dimension {n} (got {} and {})",
            alpha.len(),
            beta.len()
        )));
    }
    let mut point = alpha.to_vec();
    point.extend_from_slice(beta);
    Ok(rel.relation.contains_vector(&point)?)
}

/// Outcome of an exact two-sided inclusion test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// The left relation is strictly contained in the right one.
    StrictSubset,
    /// The left relation strictly contains the right one.
    StrictSuperset,
    Incomparable,
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Comparison::Equal => "equal",
            Comparison::StrictSubset => "strict-subset",
            Comparison::StrictSuperset => "strict-superset",
            Comparison::Incomparable => "incomparable",
        };
        f.write_str(s)
    }
}

/// Exact comparison of two relations over the same pair space.
pub fn compare(a: &SubspaceUnion, b: &SubspaceUnion) -> Result<Comparison, SeparationError> {
    let ab = a.is_subset(b)?;
    let ba = b.is_subset(a)?;
    Ok(match (ab, ba) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::StrictSubset,
        (false, true) => Comparison::StrictSuperset,
        (false, false) => Comparison::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::groups::Group;

    #[test]
    fn h_orbit_relation_extremes() {
        let g = Group::cyclic(3);
        let rep = PermRep::regular(&g);
        // H = {e}: only the diagonal.
        let trivial = h_orbit_relation(&Subgroup::trivial(&g), &rep).unwrap();
        assert_eq!(trivial.member_count(), 1);
        assert_eq!(trivial.members()[0], diagonal_subspace(3));
        // H = Z_3: three rotation graphs, each of dimension 3 in ambient 6.
        let full = h_orbit_relation(&Subgroup::full(&g), &rep).unwrap();
        assert_eq!(full.member_count(), 3);
        assert!(full.members().iter().all(|m| m.dim() == 3));
    }

    #[test]
    fn s2_orbit_relation_is_diagonal_plus_swap_graph() {
        let g = Group::symmetric(2);
        let rep = PermRep::natural(&g);
        let rel = h_orbit_relation(&Subgroup::full(&g), &rep).unwrap();
        assert_eq!(rel.member_count(), 2);
        assert!(rel.contains_vector(&[rat(1), rat(2), rat(2), rat(1)]).unwrap());
        assert!(rel.contains_vector(&[rat(1), rat(2), rat(1), rat(2)]).unwrap());
        assert!(!rel.contains_vector(&[rat(1), rat(2), rat(1), rat(1)]).unwrap());
    }

    #[test]
    fn permutation_relation_counts() {
        assert_eq!(permutation_relation(1).unwrap().member_count(), 1);
        assert_eq!(permutation_relation(2).unwrap().member_count(), 2);
        // Six pairwise-incomparable permutation graphs at n = 3.
        let r3 = permutation_relation(3).unwrap();
        assert_eq!(r3.member_count(), 6);
        assert!(permutation_relation(7).is_err());
    }

    #[test]
    fn permutation_relation_members_are_incomparable() {
        let r3 = permutation_relation(3).unwrap();
        for (i, a) in r3.members().iter().enumerate() {
            for (j, b) in r3.members().iter().enumerate() {
                if i != j {
                    assert!(!a.contains(b).unwrap());
                }
            }
        }
    }

    #[test]
    fn comparisons() {
        let r2 = permutation_relation(2).unwrap();
        let diag = SubspaceUnion::singleton(diagonal_subspace(2));
        let full = SubspaceUnion::full(4);
        assert_eq!(compare(&r2, &r2).unwrap(), Comparison::Equal);
        assert_eq!(compare(&diag, &r2).unwrap(), Comparison::StrictSubset);
        assert_eq!(compare(&r2, &diag).unwrap(), Comparison::StrictSuperset);
        assert_eq!(compare(&diag, &full).unwrap(), Comparison::StrictSubset);
        let z2 = Group::cyclic(2);
        let anti = h_orbit_relation(&Subgroup::full(&z2), &PermRep::natural(&z2)).unwrap();
        // {diagonal, swap} vs {diagonal}: strict superset; axes-style unions
        // can also be incomparable.
        assert_eq!(compare(&anti, &diag).unwrap(), Comparison::StrictSuperset);
    }

    #[test]
    fn swap_matrix_is_an_involution() {
        let s = swap_matrix(3);
        assert_eq!(s.matmul(&s), RatMatrix::identity(6));
    }
}
