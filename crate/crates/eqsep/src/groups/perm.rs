//! Permutations of a finite ground set in one-line image notation.

use std::fmt;

use super::GroupError;

/// A bijection of `{0, …, n−1}`, stored as the image list `i ↦ images[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(GroupError::NotABijection(images.clone()));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from disjoint-cycle notation over a ground set of size `n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(GroupError::NotABijection(images));
                }
                images[x] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Function composition: `(self ∘ other)(x) = self(other(x))`, matching
    /// the action convention `(gh)·x = g·(h·x)`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Parity via cycle count: even iff `degree − #cycles` is even.
    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        (n - cycles) % 2 == 0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.images
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        let swap = Permutation::new(vec![1, 0, 2]).unwrap();
        let composed = cycle.compose(&swap);
        assert_eq!(composed.apply(0), cycle.apply(swap.apply(0)));
        assert_eq!(composed.images(), &[2, 1, 0]);
    }

    #[test]
    fn inverse_undoes() {
        let p = Permutation::new(vec![3, 0, 2, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn parity_of_cycles() {
        assert!(Permutation::identity(4).is_even());
        assert!(!Permutation::new(vec![1, 0, 2]).unwrap().is_even());
        assert!(Permutation::new(vec![1, 2, 0]).unwrap().is_even());
    }

    #[test]
    fn cycle_notation_builds_expected_images() {
        let p = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 3]);
    }
}
