//! Left coset spaces and double coset decompositions.

use std::sync::Arc;

use super::{Group, GroupError, Subgroup};

/// The left coset space `G/H` with its natural `G`-action.
///
/// Cosets are indexed in discovery order of their smallest element, which is
/// also the stored representative, so the layout is canonical.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    parent: Arc<Group>,
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    representatives: Vec<usize>,
    /// Coset index of each group element.
    coset_of: Vec<usize>,
    /// `action[g][c]` = index of the coset `g·(rep_c H)`.
    action: Vec<Vec<usize>>,
}

/// Left cosets of `h` in `g`.
pub fn cosets(g: &Arc<Group>, h: &Subgroup) -> Result<CosetSpace, GroupError> {
    if !Group::same_group(g, h.parent()) {
        return Err(GroupError::GroupMismatch);
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for e in 0..order {
        if coset_of[e] != usize::MAX {
            continue;
        }
        let idx = cosets.len();
        let mut members: Vec<usize> = h.members().iter().map(|&m| g.mul(e, m)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = idx;
        }
        representatives.push(e);
        cosets.push(members);
    }
    let action: Vec<Vec<usize>> = (0..order)
        .map(|a| {
            representatives
                .iter()
                .map(|&rep| coset_of[g.mul(a, rep)])
                .collect()
        })
        .collect();
    Ok(CosetSpace {
        parent: Arc::clone(g),
        subgroup: h.clone(),
        cosets,
        representatives,
        coset_of,
        action,
    })
}

impl CosetSpace {
    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn count(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    pub fn act(&self, element: usize, coset: usize) -> usize {
        self.action[element][coset]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }
}

/// The double coset decomposition `H\G/K`.
#[derive(Debug, Clone)]
pub struct DoubleCosetSpace {
    parent: Arc<Group>,
    left: Subgroup,
    right: Subgroup,
    classes: Vec<Vec<usize>>,
    representatives: Vec<usize>,
}

/// Double cosets `HgK` for `g` ranging over the group.
pub fn double_cosets(
    h: &Subgroup,
    g: &Arc<Group>,
    k: &Subgroup,
) -> Result<DoubleCosetSpace, GroupError> {
    if !Group::same_group(g, h.parent()) || !Group::same_group(g, k.parent()) {
        return Err(GroupError::GroupMismatch);
    }
    let order = g.order();
    let mut class_of = vec![usize::MAX; order];
    let mut classes = Vec::new();
    let mut representatives = Vec::new();
    for e in 0..order {
        if class_of[e] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let mut members = Vec::new();
        for &hh in h.members() {
            let he = g.mul(hh, e);
            for &kk in k.members() {
                let hek = g.mul(he, kk);
                if class_of[hek] == usize::MAX {
                    class_of[hek] = idx;
                    members.push(hek);
                }
            }
        }
        members.sort_unstable();
        representatives.push(e);
        classes.push(members);
    }
    Ok(DoubleCosetSpace {
        parent: Arc::clone(g),
        left: h.clone(),
        right: k.clone(),
        classes,
        representatives,
    })
}

impl DoubleCosetSpace {
    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn left(&self) -> &Subgroup {
        &self.left
    }

    pub fn right(&self) -> &Subgroup {
        &self.right
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_mod_a3_has_two_cosets() {
        let g = Group::symmetric(3);
        let a3 = Subgroup::alternating(&g);
        let cs = cosets(&g, &a3).unwrap();
        assert_eq!(cs.count(), 2);
        // |G| = Σ |coset| and each coset has |H| elements.
        assert_eq!(cs.cosets().iter().map(Vec::len).sum::<usize>(), g.order());
        assert!(cs.cosets().iter().all(|c| c.len() == a3.order()));
    }

    #[test]
    fn trivial_and_full_cosets() {
        let g = Group::symmetric(3);
        assert_eq!(cosets(&g, &Subgroup::trivial(&g)).unwrap().count(), g.order());
        assert_eq!(cosets(&g, &Subgroup::full(&g)).unwrap().count(), 1);
    }

    #[test]
    fn coset_action_is_transitive_and_lawful() {
        let g = Group::symmetric(3);
        let a3 = Subgroup::alternating(&g);
        let cs = cosets(&g, &a3).unwrap();
        for c in 0..cs.count() {
            assert_eq!(cs.act(g.identity(), c), c);
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                for c in 0..cs.count() {
                    assert_eq!(cs.act(a, cs.act(b, c)), cs.act(g.mul(a, b), c));
                }
            }
        }
        // Transitivity: some element maps coset 0 to every coset.
        for c in 0..cs.count() {
            assert!((0..g.order()).any(|a| cs.act(a, 0) == c));
        }
    }

    #[test]
    fn representatives_are_smallest_members() {
        let g = Group::symmetric(4);
        let h = Subgroup::generated(&g, &[crate::groups::Permutation::new(vec![1, 0, 2, 3]).unwrap()])
            .unwrap();
        let cs = cosets(&g, &h).unwrap();
        for (i, coset) in cs.cosets().iter().enumerate() {
            assert_eq!(cs.representatives()[i], coset[0]);
        }
    }

    #[test]
    fn double_coset_extremes() {
        let g = Group::symmetric(3);
        let e = Subgroup::trivial(&g);
        let full = Subgroup::full(&g);
        assert_eq!(double_cosets(&e, &g, &e).unwrap().count(), g.order());
        assert_eq!(double_cosets(&full, &g, &full).unwrap().count(), 1);
    }

    #[test]
    fn a3_double_cosets_in_s3() {
        // Enumerating hgk products by brute force puts the six elements of
        // S_3 into two A_3–A_3 classes.
        let g = Group::symmetric(3);
        let a3 = Subgroup::alternating(&g);
        let d = double_cosets(&a3, &g, &a3).unwrap();
        assert_eq!(d.count(), 2);
        let covered: usize = d.classes().iter().map(Vec::len).sum();
        assert_eq!(covered, g.order());
    }
}
