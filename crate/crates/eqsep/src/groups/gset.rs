//! Finite G-sets: a group acting on an indexed finite set, with the orbit
//! decomposition computed at construction.

use std::sync::Arc;

use super::{CosetSpace, Group, GroupError};

/// Exhaustive action-law validation is performed up to this many
/// (element, point) pairs; larger actions are validated on generators only.
const EXHAUSTIVE_VALIDATION_LIMIT: usize = 10_000;

/// A finite set `{0, …, size−1}` with a `G`-action, given by the permutation
/// of points induced by every group element.
#[derive(Debug, Clone)]
pub struct GSet {
    group: Arc<Group>,
    size: usize,
    /// `action[g][x]` = image of point `x` under group element `g`.
    action: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    orbits: Vec<Vec<usize>>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && Group::same_group(&self.group, &other.group)
            && self.action == other.action
    }
}

impl Eq for GSet {}

impl GSet {
    pub fn new(
        group: Arc<Group>,
        size: usize,
        action: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if action.len() != group.order() {
            return Err(GroupError::InvalidAction(format!(
                "need one permutation per group element ({} given, order {})",
                action.len(),
                group.order()
            )));
        }
        for perm in &action {
            if perm.len() != size {
                return Err(GroupError::InvalidAction("wrong point count".into()));
            }
            let mut seen = vec![false; size];
            for &img in perm {
                if img >= size || seen[img] {
                    return Err(GroupError::InvalidAction("element acts non-bijectively".into()));
                }
                seen[img] = true;
            }
        }
        let e = group.identity();
        if action[e].iter().enumerate().any(|(x, &img)| x != img) {
            return Err(GroupError::InvalidAction("identity does not fix points".into()));
        }
        let exhaustive = group.order() * size <= EXHAUSTIVE_VALIDATION_LIMIT;
        let pairs: Vec<(usize, usize)> = if exhaustive {
            (0..group.order())
                .flat_map(|a| (0..group.order()).map(move |b| (a, b)))
                .collect()
        } else {
            group
                .generator_indices()
                .iter()
                .flat_map(|&a| (0..group.order()).map(move |b| (a, b)))
                .collect()
        };
        for (a, b) in pairs {
            let ab = group.mul(a, b);
            for x in 0..size {
                if action[a][action[b][x]] != action[ab][x] {
                    return Err(GroupError::InvalidAction(format!(
                        "compatibility fails at elements {a},{b} on point {x}"
                    )));
                }
            }
        }
        if let Some(l) = &labels {
            if l.len() != size {
                return Err(GroupError::InvalidAction("label count mismatch".into()));
            }
        }
        let orbits = compute_orbits(&group, size, &action);
        Ok(GSet {
            group,
            size,
            action,
            labels,
            orbits,
        })
    }

    /// The group acting on its own ground set.
    pub fn natural(group: &Arc<Group>) -> Self {
        let size = group.degree();
        let action = group
            .elements()
            .iter()
            .map(|p| (0..size).map(|x| p.apply(x)).collect())
            .collect();
        Self::new(Arc::clone(group), size, action, None).expect("native action is lawful")
    }

    /// The group acting on itself by left multiplication.
    pub fn regular(group: &Arc<Group>) -> Self {
        let size = group.order();
        let action = (0..size)
            .map(|g| (0..size).map(|x| group.mul(g, x)).collect())
            .collect();
        let labels = group.elements().iter().map(|p| format!("{p:?}")).collect();
        Self::new(Arc::clone(group), size, action, Some(labels)).expect("regular action is lawful")
    }

    /// The natural action on a coset space.
    pub fn from_cosets(cs: &CosetSpace) -> Self {
        let group = Arc::clone(cs.parent());
        let size = cs.count();
        let action: Vec<Vec<usize>> = cs.action_table().to_vec();
        let labels = cs
            .representatives()
            .iter()
            .map(|&r| format!("{:?}H", group.element(r)))
            .collect();
        Self::new(group, size, action, Some(labels)).expect("coset action is lawful")
    }

    /// One fixed point.
    pub fn trivial(group: &Arc<Group>) -> Self {
        let action = vec![vec![0]; group.order()];
        Self::new(Arc::clone(group), 1, action, Some(vec!["*".into()])).unwrap()
    }

    /// Product G-set: `g·(x, y) = (g·x, g·y)`, point `(x, y)` at index
    /// `x·|Y| + y`.
    pub fn product(x: &GSet, y: &GSet) -> Result<GSet, GroupError> {
        if !Group::same_group(&x.group, &y.group) {
            return Err(GroupError::GroupMismatch);
        }
        let size = x.size * y.size;
        let action = (0..x.group.order())
            .map(|g| {
                let mut row = Vec::with_capacity(size);
                for a in 0..x.size {
                    for b in 0..y.size {
                        row.push(x.action[g][a] * y.size + y.action[g][b]);
                    }
                }
                row
            })
            .collect();
        let labels = match (&x.labels, &y.labels) {
            (Some(lx), Some(ly)) => Some(
                lx.iter()
                    .flat_map(|a| ly.iter().map(move |b| format!("({a},{b})")))
                    .collect(),
            ),
            _ => None,
        };
        GSet::new(Arc::clone(&x.group), size, action, labels)
    }

    /// Disjoint union: the second copy's points are offset by `|X|`.
    pub fn disjoint_union(x: &GSet, y: &GSet) -> Result<GSet, GroupError> {
        if !Group::same_group(&x.group, &y.group) {
            return Err(GroupError::GroupMismatch);
        }
        let size = x.size + y.size;
        let action = (0..x.group.order())
            .map(|g| {
                let mut row: Vec<usize> = x.action[g].clone();
                row.extend(y.action[g].iter().map(|&p| p + x.size));
                row
            })
            .collect();
        let labels = match (&x.labels, &y.labels) {
            (Some(lx), Some(ly)) => {
                let mut l = lx.clone();
                l.extend(ly.iter().map(|b| format!("{b}'")));
                Some(l)
            }
            _ => None,
        };
        GSet::new(Arc::clone(&x.group), size, action, labels)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn act(&self, element: usize, point: usize) -> usize {
        self.action[element][point]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The orbit partition, cached at construction.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }
}

fn compute_orbits(group: &Group, size: usize, action: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let gens = group.generator_indices();
    let mut orbit_of = vec![usize::MAX; size];
    let mut orbits = Vec::new();
    for start in 0..size {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let idx = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = idx;
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [action[g][x], action[group.inverse(g)][x]] {
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = idx;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cosets;
    use crate::groups::Subgroup;

    #[test]
    fn diagonal_action_on_pairs_has_two_orbits() {
        let g = Group::symmetric(3);
        let nat = GSet::natural(&g);
        let pairs = GSet::product(&nat, &nat).unwrap();
        assert_eq!(pairs.size(), 9);
        let orbits = pairs.orbits();
        assert_eq!(orbits.len(), 2);
        // Diagonal orbit {(i,i)} has 3 points, off-diagonal has 6.
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 6]);
    }

    #[test]
    fn trivial_group_has_singleton_orbits() {
        let e = Group::generate(vec![crate::groups::Permutation::identity(4)]).unwrap();
        let nat = GSet::natural(&e);
        assert_eq!(nat.orbits().len(), 4);
    }

    #[test]
    fn rotation_action_is_transitive() {
        let z4 = Group::cyclic(4);
        let nat = GSet::natural(&z4);
        assert_eq!(nat.orbits().len(), 1);
    }

    #[test]
    fn orbits_match_flood_fill_over_all_elements() {
        // Reachability oracle: flood fill under *every* element, not just
        // generators, must give the same partition.
        let g = Group::dihedral(4);
        let nat = GSet::natural(&g);
        let pairs = GSet::product(&nat, &nat).unwrap();
        let mut orbit_of = vec![usize::MAX; pairs.size()];
        let mut count = 0;
        for start in 0..pairs.size() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let idx = count;
            count += 1;
            let mut frontier = vec![start];
            orbit_of[start] = idx;
            while let Some(x) = frontier.pop() {
                for e in 0..g.order() {
                    let y = pairs.act(e, x);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = idx;
                        frontier.push(y);
                    }
                }
            }
        }
        assert_eq!(pairs.orbits().len(), count);
        for orbit in pairs.orbits() {
            assert!(orbit.iter().all(|&x| orbit_of[x] == orbit_of[orbit[0]]));
        }
    }

    #[test]
    fn action_laws_hold_exhaustively_on_small_gsets() {
        let g = Group::symmetric(3);
        for gset in [
            GSet::natural(&g),
            GSet::regular(&g),
            GSet::trivial(&g),
            GSet::from_cosets(&cosets(&g, &Subgroup::alternating(&g)).unwrap()),
        ] {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    for x in 0..gset.size() {
                        assert_eq!(gset.act(a, gset.act(b, x)), gset.act(g.mul(a, b), x));
                    }
                }
            }
            for x in 0..gset.size() {
                assert_eq!(gset.act(g.identity(), x), x);
            }
        }
    }

    #[test]
    fn disjoint_union_doubles_and_coset_point_is_fixed() {
        let g = Group::cyclic(3);
        let nat = GSet::natural(&g);
        let doubled = GSet::disjoint_union(&nat, &nat).unwrap();
        assert_eq!(doubled.size(), 6);
        assert_eq!(doubled.orbits().len(), 2);
        for e in 0..g.order() {
            for x in 0..3 {
                assert_eq!(doubled.act(e, x), nat.act(e, x));
                assert_eq!(doubled.act(e, x + 3), nat.act(e, x) + 3);
            }
        }
        let point = GSet::from_cosets(&cosets(&g, &Subgroup::full(&g)).unwrap());
        assert_eq!(point.size(), 1);
        assert_eq!(point.orbits().len(), 1);
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let a = GSet::natural(&Group::cyclic(3));
        let b = GSet::natural(&Group::cyclic(4));
        assert!(matches!(
            GSet::product(&a, &b),
            Err(GroupError::GroupMismatch)
        ));
    }
}
