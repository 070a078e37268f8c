//! Finite permutation groups with canonical element order, and subgroups.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{GroupError, Permutation};

/// Upper bound on the group order for exhaustive subgroup enumeration.
const SUBGROUP_ENUM_LIMIT: usize = 16;

/// A finite group realized as permutations of a fixed ground set.
///
/// Elements are sorted lexicographically on their image lists, so two
/// constructions of the same group produce identical structures; all indices
/// elsewhere in the crate refer to this order. The identity, inverse table,
/// and full multiplication table are precomputed.
#[derive(Debug, PartialEq, Eq)]
pub struct Group {
    degree: usize,
    elements: Vec<Permutation>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
}

impl Group {
    /// Closure of a generator list under composition.
    pub fn generate(gens: Vec<Permutation>) -> Result<Arc<Group>, GroupError> {
        let degree = match gens.first() {
            Some(g) => g.degree(),
            None => 1,
        };
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        set.insert(Permutation::identity(degree));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q = g.compose(&p);
                if set.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let elements: Vec<Permutation> = set.into_iter().collect();
        let index_of = |p: &Permutation| -> usize {
            elements.binary_search(p).expect("closure is complete")
        };
        let order = elements.len();
        let mut mul = vec![vec![0usize; order]; order];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a][b] = index_of(&pa.compose(pb));
            }
        }
        let inv: Vec<usize> = elements.iter().map(|p| index_of(&p.inverse())).collect();
        let identity = index_of(&Permutation::identity(degree));
        let generators: Vec<usize> = {
            let mut idx: Vec<usize> = gens.iter().map(|g| index_of(g)).collect();
            idx.sort_unstable();
            idx.dedup();
            if idx.is_empty() {
                idx.push(identity);
            }
            idx
        };
        Ok(Arc::new(Group {
            degree,
            elements,
            mul,
            inv,
            identity,
            generators,
        }))
    }

    /// Cyclic group of order `n`, acting on `[n]` by rotation.
    pub fn cyclic(n: usize) -> Arc<Group> {
        assert!(n >= 1);
        let rot = Permutation::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        Self::generate(vec![rot]).unwrap()
    }

    /// Symmetric group on `[n]`.
    pub fn symmetric(n: usize) -> Arc<Group> {
        assert!(n >= 1);
        if n == 1 {
            return Self::generate(vec![Permutation::identity(1)]).unwrap();
        }
        let swap = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        let cycle = Permutation::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        Self::generate(vec![swap, cycle]).unwrap()
    }

    /// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Arc<Group> {
        assert!(n >= 1);
        let rot = Permutation::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let refl = Permutation::new((0..n).map(|i| (n - i) % n).collect()).unwrap();
        Self::generate(vec![rot, refl]).unwrap()
    }

    /// Direct product, acting on the disjoint union of the ground sets.
    pub fn product(a: &Arc<Group>, b: &Arc<Group>) -> Arc<Group> {
        let (da, db) = (a.degree, b.degree);
        let mut gens = Vec::new();
        for gi in &a.generators {
            let ga = &a.elements[*gi];
            let mut images: Vec<usize> = (0..da + db).collect();
            for x in 0..da {
                images[x] = ga.apply(x);
            }
            gens.push(Permutation::new(images).unwrap());
        }
        for gi in &b.generators {
            let gb = &b.elements[*gi];
            let mut images: Vec<usize> = (0..da + db).collect();
            for x in 0..db {
                images[da + x] = da + gb.apply(x);
            }
            gens.push(Permutation::new(images).unwrap());
        }
        Self::generate(gens).unwrap()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Size of the ground set the group permutes.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Result<usize, GroupError> {
        self.elements.binary_search(p).map_err(|_| GroupError::NotAnElement)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Indices of the defining generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// Structural identity check used to validate that two objects live over
    /// the same group.
    pub fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
        Arc::ptr_eq(a, b) || a.elements == b.elements
    }
}

/// A validated subgroup: member indices into the parent, closed under
/// multiplication and containing the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<Group>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &Arc<Group>, members: Vec<usize>) -> Result<Self, GroupError> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= parent.order()) {
            return Err(GroupError::InvalidSubgroup(
                "member index out of range".into(),
            ));
        }
        if !members.contains(&parent.identity()) {
            return Err(GroupError::InvalidSubgroup("identity missing".into()));
        }
        for &a in &members {
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(GroupError::InvalidSubgroup(format!(
                        "not closed: {:?} * {:?}",
                        parent.element(a),
                        parent.element(b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members,
        })
    }

    /// Subgroup generated by the given permutations, which must all lie in
    /// the parent.
    pub fn generated(parent: &Arc<Group>, gens: &[Permutation]) -> Result<Self, GroupError> {
        let mut set = BTreeSet::new();
        set.insert(parent.identity());
        let mut frontier = vec![parent.identity()];
        let gen_indices: Vec<usize> = gens
            .iter()
            .map(|g| parent.index_of(g))
            .collect::<Result<_, _>>()?;
        while let Some(x) = frontier.pop() {
            for &g in &gen_indices {
                let y = parent.mul(g, x);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup::new(parent, set.into_iter().collect())
    }

    pub fn trivial(parent: &Arc<Group>) -> Self {
        Subgroup {
            parent: Arc::clone(parent),
            members: vec![parent.identity()],
        }
    }

    pub fn full(parent: &Arc<Group>) -> Self {
        Subgroup {
            parent: Arc::clone(parent),
            members: (0..parent.order()).collect(),
        }
    }

    /// The subgroup of even elements (the alternating subgroup when the
    /// parent is a symmetric group).
    pub fn alternating(parent: &Arc<Group>) -> Self {
        let members: Vec<usize> = (0..parent.order())
            .filter(|&i| parent.element(i).is_even())
            .collect();
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        Group::same_group(&self.parent, &other.parent)
            && self.members.iter().all(|&m| other.contains(m))
    }
}

/// Every subgroup of a small group, by exhaustive subset filtering.
pub fn all_subgroups(parent: &Arc<Group>) -> Result<Vec<Subgroup>, GroupError> {
    let n = parent.order();
    if n > SUBGROUP_ENUM_LIMIT {
        return Err(GroupError::TooLarge {
            order: n,
            limit: SUBGROUP_ENUM_LIMIT,
            what: "exhaustive subgroup enumeration",
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask >> parent.identity() & 1 == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if n % members.len() != 0 {
            continue; // Lagrange
        }
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask >> parent.mul(a, b) & 1 == 1));
        if closed {
            out.push(Subgroup {
                parent: Arc::clone(parent),
                members,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_from_three_cycle() {
        let g = Group::generate(vec![Permutation::new(vec![1, 2, 0]).unwrap()]).unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn s3_from_transposition_and_cycle() {
        let g = Group::generate(vec![
            Permutation::new(vec![1, 0, 2]).unwrap(),
            Permutation::new(vec![1, 2, 0]).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(*g, *Group::symmetric(3));
    }

    #[test]
    fn dihedral_from_rotation_and_reflection() {
        // Brute-force closure of a 4-cycle and a reflection has order 8.
        let g = Group::generate(vec![
            Permutation::new(vec![1, 2, 3, 0]).unwrap(),
            Permutation::new(vec![0, 3, 2, 1]).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(*g, *Group::dihedral(4));
    }

    #[test]
    fn multiplication_table_is_consistent() {
        let g = Group::symmetric(3);
        for a in 0..g.order() {
            for b in 0..g.order() {
                let expected = g.element(a).compose(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &expected);
            }
            assert_eq!(g.mul(a, g.inverse(a)), g.identity());
        }
    }

    #[test]
    fn product_group_order_multiplies() {
        let g = Group::product(&Group::cyclic(2), &Group::cyclic(3));
        assert_eq!(g.order(), 6);
        assert_eq!(g.degree(), 5);
    }

    #[test]
    fn subgroup_validation() {
        let g = Group::symmetric(3);
        let a3 = Subgroup::alternating(&g);
        assert_eq!(a3.order(), 3);
        // Not closed: a transposition alone (without the identity/closure).
        let t = g
            .index_of(&Permutation::new(vec![1, 0, 2]).unwrap())
            .unwrap();
        assert!(Subgroup::new(&g, vec![t]).is_err());
        assert!(Subgroup::new(&g, vec![g.identity(), t]).is_ok());
    }

    #[test]
    fn generated_subgroup_closes() {
        let g = Group::symmetric(3);
        let h = Subgroup::generated(&g, &[Permutation::new(vec![1, 2, 0]).unwrap()]).unwrap();
        assert_eq!(h.order(), 3);
        assert!(h.is_subgroup_of(&Subgroup::full(&g)));
    }

    #[test]
    fn lagrange_holds_for_all_enumerated_subgroups() {
        let g = Group::symmetric(3);
        let subs = all_subgroups(&g).unwrap();
        // S_3 has 6 subgroups: e, three of order 2, A_3, S_3.
        assert_eq!(subs.len(), 6);
        for s in &subs {
            assert_eq!(g.order() % s.order(), 0);
        }
    }
}
