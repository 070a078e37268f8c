//! Linear subspaces in canonical constraint form and finite unions thereof.
//!
//! A [`Subspace`] is stored through the functionals vanishing on it: a
//! reduced-row-echelon constraint matrix. Intersection is then constraint
//! stacking, while containment queries go through a lazily cached spanning
//! basis. A [`SubspaceUnion`] keeps its members *absorbed* (no member inside
//! another) and sorted by a total canonical order, so structurally equal
//! unions denote equal point sets and every engine output is reproducible
//! byte for byte.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num::Zero;
use rand::Rng;

use super::{ExactLinError, RatMatrix, Rational};

/// A linear subspace of `ℚ^ambient`, represented by canonical RREF
/// constraints (rows are functionals vanishing on the subspace).
#[derive(Clone)]
pub struct Subspace {
    ambient: usize,
    constraints: RatMatrix,
    basis: OnceLock<RatMatrix>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.constraints == other.constraints
    }
}

impl Eq for Subspace {}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.constraints.hash(state);
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}, constraints {:?})",
            self.dim(),
            self.ambient,
            self.constraints
        )
    }
}

impl Subspace {
    /// The whole space: no constraints.
    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            constraints: RatMatrix::zeros(0, ambient),
            basis: OnceLock::new(),
        }
    }

    /// The origin: full-rank constraints.
    pub fn zero_point(ambient: usize) -> Self {
        Self::from_constraints(ambient, &RatMatrix::identity(ambient))
    }

    /// Subspace cut out by `constraints·v = 0`; the matrix is canonicalized
    /// to RREF with zero rows dropped.
    pub fn from_constraints(ambient: usize, constraints: &RatMatrix) -> Self {
        assert_eq!(constraints.cols(), ambient, "constraint width mismatch");
        let (rref, _) = constraints.rref();
        Subspace {
            ambient,
            constraints: rref,
            basis: OnceLock::new(),
        }
    }

    /// The kernel `{v : m·v = 0}` of a matrix, as a subspace of `ℚ^cols`.
    pub fn nullspace(m: &RatMatrix) -> Self {
        Self::from_constraints(m.cols(), m)
    }

    /// Smallest subspace containing the given vectors.
    pub fn from_spanning(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector length mismatch");
        }
        let span = if vectors.is_empty() {
            RatMatrix::zeros(0, ambient)
        } else {
            RatMatrix::from_rows(vectors.to_vec())
        };
        // Constraints = functionals vanishing on the span = kernel of the
        // span matrix, re-canonicalized.
        Self::from_constraints(ambient, &span.nullspace_basis())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.constraints.rows()
    }

    pub fn constraints(&self) -> &RatMatrix {
        &self.constraints
    }

    pub fn is_full(&self) -> bool {
        self.constraints.rows() == 0
    }

    pub fn is_zero_point(&self) -> bool {
        self.dim() == 0
    }

    /// Cached canonical spanning set (rows), computed on first use.
    pub fn basis(&self) -> &RatMatrix {
        self.basis.get_or_init(|| self.constraints.nullspace_basis())
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool, ExactLinError> {
        if v.len() != self.ambient {
            return Err(ExactLinError::VectorLength {
                expected: self.ambient,
                got: v.len(),
            });
        }
        Ok(self.constraints.mul_vec(v).iter().all(Zero::is_zero))
    }

    /// Whether `other ⊆ self`: every basis vector of `other` satisfies every
    /// constraint of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, ExactLinError> {
        self.check_ambient(other)?;
        if self.constraints.rows() == 0 {
            return Ok(true);
        }
        if other.dim() > self.dim() {
            return Ok(false);
        }
        let basis = other.basis();
        for r in 0..basis.rows() {
            if self.constraints.mul_vec(basis.row(r)).iter().any(|e| !e.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection by constraint stacking.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactLinError> {
        self.check_ambient(other)?;
        Ok(Self::from_constraints(
            self.ambient,
            &RatMatrix::vstack(&[&self.constraints, &other.constraints]),
        ))
    }

    /// Image under an invertible linear map given by `t` (columns act on
    /// coordinates): `{t·v : v ∈ self}`.
    pub fn transform(&self, t: &RatMatrix) -> Subspace {
        assert_eq!(t.rows(), self.ambient);
        assert_eq!(t.cols(), self.ambient);
        let mapped = self.basis().matmul(&t.transpose());
        Self::from_spanning(self.ambient, &mapped.row_vecs())
    }

    /// Deterministic "random" rational point of the subspace: a small integer
    /// combination of the canonical basis rows.
    pub fn sample_point(&self, rng: &mut impl Rng) -> Vec<Rational> {
        let basis = self.basis();
        let mut v = vec![Rational::zero(); self.ambient];
        for r in 0..basis.rows() {
            let c: i64 = rng.gen_range(-5..=5);
            if c == 0 {
                continue;
            }
            let c = super::rat(c);
            for (slot, e) in v.iter_mut().zip(basis.row(r)) {
                if !e.is_zero() {
                    *slot += &c * e;
                }
            }
        }
        v
    }

    /// Total canonical order: dimension descending, then lexicographic on the
    /// RREF constraint entries. Drives the member order inside unions.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| other.dim().cmp(&self.dim()))
            .then_with(|| {
                for (a, b) in self
                    .constraints
                    .flat()
                    .iter()
                    .zip(other.constraints.flat())
                {
                    let ord = a.cmp(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), ExactLinError> {
        if self.ambient != other.ambient {
            return Err(ExactLinError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

/// A finite union of subspaces in absorbed canonical form.
///
/// No member contains another, members are sorted by
/// [`Subspace::canonical_cmp`], an empty member list denotes the empty set,
/// and the full space is the single member with no constraints. Because a
/// rational subspace inside a finite union of subspaces must lie inside one
/// member, the canonical form is unique per point set and all the set
/// predicates below are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceUnion {
    ambient: usize,
    members: Vec<Subspace>,
}

impl SubspaceUnion {
    pub fn empty(ambient: usize) -> Self {
        SubspaceUnion {
            ambient,
            members: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceUnion {
            ambient,
            members: vec![Subspace::full(ambient)],
        }
    }

    pub fn singleton(member: Subspace) -> Self {
        SubspaceUnion {
            ambient: member.ambient_dim(),
            members: vec![member],
        }
    }

    /// Canonical form of an arbitrary member list: drops members contained in
    /// another and sorts. The result depends only on the input set.
    pub fn normalize(ambient: usize, members: Vec<Subspace>) -> Result<Self, ExactLinError> {
        for m in &members {
            if m.ambient_dim() != ambient {
                return Err(ExactLinError::AmbientMismatch {
                    left: ambient,
                    right: m.ambient_dim(),
                });
            }
        }
        let mut sorted = members;
        sorted.sort_by(Subspace::canonical_cmp);
        sorted.dedup();
        // Sorted by dimension descending, so a strict container always
        // precedes what it absorbs.
        let mut kept: Vec<Subspace> = Vec::with_capacity(sorted.len());
        'outer: for cand in sorted {
            for k in &kept {
                if k.contains(&cand)? {
                    continue 'outer;
                }
            }
            kept.push(cand);
        }
        Ok(SubspaceUnion {
            ambient,
            members: kept,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty_set(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == 1 && self.members[0].is_full()
    }

    /// Pairwise intersection of members, normalized. Exact by
    /// distributivity of ∩ over ∪.
    pub fn intersect(&self, other: &SubspaceUnion) -> Result<SubspaceUnion, ExactLinError> {
        self.check_ambient(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let pairs: Vec<(usize, usize)> = (0..self.members.len())
            .flat_map(|i| (0..other.members.len()).map(move |j| (i, j)))
            .collect();
        let intersections = if pairs.len() >= 64 {
            use rayon::prelude::*;
            pairs
                .par_iter()
                .map(|&(i, j)| self.members[i].intersect(&other.members[j]))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            pairs
                .iter()
                .map(|&(i, j)| self.members[i].intersect(&other.members[j]))
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::normalize(self.ambient, intersections)
    }

    pub fn union(&self, other: &SubspaceUnion) -> Result<SubspaceUnion, ExactLinError> {
        self.check_ambient(other)?;
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        Self::normalize(self.ambient, members)
    }

    /// Whether some member contains `s`. Sound and complete for subspace
    /// queries: a subspace inside a finite union lies inside one member.
    pub fn contains_subspace(&self, s: &Subspace) -> Result<bool, ExactLinError> {
        if s.ambient_dim() != self.ambient {
            return Err(ExactLinError::AmbientMismatch {
                left: self.ambient,
                right: s.ambient_dim(),
            });
        }
        for m in &self.members {
            if m.contains(s)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool, ExactLinError> {
        if v.len() != self.ambient {
            return Err(ExactLinError::VectorLength {
                expected: self.ambient,
                got: v.len(),
            });
        }
        for m in &self.members {
            if m.contains_vector(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_subset(&self, other: &SubspaceUnion) -> Result<bool, ExactLinError> {
        self.check_ambient(other)?;
        for m in &self.members {
            if !other.contains_subspace(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn eq_as_sets(&self, other: &SubspaceUnion) -> Result<bool, ExactLinError> {
        if self == other {
            return Ok(true);
        }
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// Image of every member under an invertible map, renormalized.
    pub fn transform(&self, t: &RatMatrix) -> Result<SubspaceUnion, ExactLinError> {
        Self::normalize(
            self.ambient,
            self.members.iter().map(|m| m.transform(t)).collect(),
        )
    }

    fn check_ambient(&self, other: &SubspaceUnion) -> Result<(), ExactLinError> {
        if self.ambient != other.ambient {
            return Err(ExactLinError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}
