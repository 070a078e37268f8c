//! Permutation representations: `R^X` for a finite G-set `X`, with basis
//! vectors permuted by the action (`g·e_x = e_{g·x}`).

use std::sync::Arc;

use num::One;

use super::EquivariantError;
use crate::exactlin::{RatMatrix, Rational};
use crate::groups::{cosets, GSet, Group, Subgroup};

/// The permutation representation carried by a [`GSet`]; the representing
/// matrix of `g` sends `e_x` to `e_{g·x}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermRep {
    gset: GSet,
}

impl PermRep {
    pub fn new(gset: GSet) -> Self {
        PermRep { gset }
    }

    /// `R^G`: the group acting on itself by left multiplication.
    pub fn regular(group: &Arc<Group>) -> Self {
        PermRep::new(GSet::regular(group))
    }

    /// The defining action on the group's own ground set.
    pub fn natural(group: &Arc<Group>) -> Self {
        PermRep::new(GSet::natural(group))
    }

    /// `R^{G/H}`.
    pub fn from_cosets(group: &Arc<Group>, h: &Subgroup) -> Result<Self, EquivariantError> {
        Ok(PermRep::new(GSet::from_cosets(&cosets(group, h)?)))
    }

    /// The one-dimensional trivial representation `R^{G/G}`.
    pub fn trivial(group: &Arc<Group>) -> Self {
        PermRep::new(GSet::trivial(group))
    }

    /// Direct sum `V ⊕ W` over the disjoint union of the point sets.
    pub fn sum(v: &PermRep, w: &PermRep) -> Result<Self, EquivariantError> {
        Ok(PermRep::new(GSet::disjoint_union(&v.gset, &w.gset)?))
    }

    /// `V ⊗ R^f ≅ V^{⊕f}`: `f` disjoint copies, copy-major point layout
    /// (copy `c`, point `x`) ↦ `c·dim(V) + x`.
    pub fn mult(v: &PermRep, f: usize) -> Result<Self, EquivariantError> {
        assert!(f >= 1, "multiplicity must be positive");
        let mut acc = v.clone();
        for _ in 1..f {
            acc = PermRep::new(GSet::disjoint_union(&acc.gset, &v.gset)?);
        }
        Ok(acc)
    }

    /// `R^{[n]^k}`: the k-fold product of the natural G-set (the IGN index
    /// space when the group is `S_n`).
    pub fn power(group: &Arc<Group>, k: usize) -> Result<Self, EquivariantError> {
        assert!(k >= 1, "power must be positive");
        let base = GSet::natural(group);
        let mut acc = base.clone();
        for _ in 1..k {
            acc = GSet::product(&acc, &base)?;
        }
        Ok(PermRep::new(acc))
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn group(&self) -> &Arc<Group> {
        self.gset.group()
    }

    pub fn dim(&self) -> usize {
        self.gset.size()
    }

    /// The 0/1 matrix of a group element: entry `(g·x, x)` is one.
    pub fn matrix(&self, element: usize) -> RatMatrix {
        let n = self.dim();
        let mut m = RatMatrix::zeros(n, n);
        for x in 0..n {
            m.set(self.gset.act(element, x), x, Rational::one());
        }
        m
    }

    /// Matrices of the group's defining generators.
    pub fn generator_matrices(&self) -> Vec<RatMatrix> {
        self.group()
            .generator_indices()
            .iter()
            .map(|&g| self.matrix(g))
            .collect()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        self.gset.orbits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_rep_of_z3() {
        let g = Group::cyclic(3);
        let rep = PermRep::regular(&g);
        assert_eq!(rep.dim(), 3);
        assert_eq!(rep.orbits().len(), 1);
    }

    #[test]
    fn coset_rep_of_s3_mod_a3_is_two_dimensional() {
        let g = Group::symmetric(3);
        let a3 = Subgroup::alternating(&g);
        let rep = PermRep::from_cosets(&g, &a3).unwrap();
        assert_eq!(rep.dim(), 2);
    }

    #[test]
    fn mult_rep_triples_dimension_and_orbit_count() {
        let g = Group::cyclic(3);
        let v = PermRep::regular(&g);
        let m = PermRep::mult(&v, 3).unwrap();
        assert_eq!(m.dim(), 9);
        assert_eq!(m.orbits().len(), 3 * v.orbits().len());
    }

    #[test]
    fn element_matrices_respect_multiplication() {
        let g = Group::symmetric(3);
        let rep = PermRep::power(&g, 2).unwrap();
        assert_eq!(rep.dim(), 9);
        for &a in g.generator_indices() {
            for &b in g.generator_indices() {
                let prod = rep.matrix(a).matmul(&rep.matrix(b));
                assert_eq!(prod, rep.matrix(g.mul(a, b)));
            }
        }
    }
}
