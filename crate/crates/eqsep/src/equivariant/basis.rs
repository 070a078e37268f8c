//! Bases of invariant vectors and of equivariant linear maps.

use num::Zero;

use super::{EquivariantError, PermRep};
use crate::exactlin::{ratio, RatMatrix, Rational};
use crate::groups::{cosets, double_cosets, Group, Subgroup};

/// A linearly independent spanning set of a subspace of `Hom_G(V, W)`,
/// each generator a `dim(W) × dim(V)` matrix commuting with the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantBasis {
    source: PermRep,
    target: PermRep,
    generators: Vec<RatMatrix>,
}

impl EquivariantBasis {
    /// Wraps explicit generators, validating shape, equivariance on the
    /// group's generators, and linear independence.
    pub fn explicit(
        source: PermRep,
        target: PermRep,
        generators: Vec<RatMatrix>,
    ) -> Result<Self, EquivariantError> {
        let (rows, cols) = (target.dim(), source.dim());
        for (index, m) in generators.iter().enumerate() {
            if m.rows() != rows || m.cols() != cols {
                return Err(EquivariantError::BadShape {
                    index,
                    rows,
                    cols,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        let src_mats = source.generator_matrices();
        let tgt_mats = target.generator_matrices();
        for (index, m) in generators.iter().enumerate() {
            for (s, t) in src_mats.iter().zip(&tgt_mats) {
                if m.matmul(s) != t.matmul(m) {
                    return Err(EquivariantError::NotEquivariant { index });
                }
            }
        }
        let basis = EquivariantBasis {
            source,
            target,
            generators,
        };
        let rank = basis.vectorized().rank();
        if rank != basis.generators.len() {
            return Err(EquivariantError::DependentGenerators {
                rank,
                count: basis.generators.len(),
            });
        }
        Ok(basis)
    }

    /// Trusted constructor for generators produced by the solvers below.
    fn from_solver(source: PermRep, target: PermRep, generators: Vec<RatMatrix>) -> Self {
        EquivariantBasis {
            source,
            target,
            generators,
        }
    }

    pub fn source(&self) -> &PermRep {
        &self.source
    }

    pub fn target(&self) -> &PermRep {
        &self.target
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn count(&self) -> usize {
        self.generators.len()
    }

    /// Generators flattened row-major, one matrix per row.
    pub fn vectorized(&self) -> RatMatrix {
        if self.generators.is_empty() {
            return RatMatrix::zeros(0, self.target.dim() * self.source.dim());
        }
        RatMatrix::from_rows(
            self.generators
                .iter()
                .map(|m| m.flat().to_vec())
                .collect(),
        )
    }

    /// Whether the spans coincide, as equality of canonical RREFs of the
    /// vectorized generator stacks.
    pub fn span_equals(&self, other: &EquivariantBasis) -> bool {
        self.source.dim() == other.source.dim()
            && self.target.dim() == other.target.dim()
            && self.vectorized().rref() == other.vectorized().rref()
    }

    /// Whether a given map lies in the span of the generators.
    pub fn span_contains(&self, m: &RatMatrix) -> bool {
        if m.rows() != self.target.dim() || m.cols() != self.source.dim() {
            return false;
        }
        let stacked = RatMatrix::vstack(&[
            &self.vectorized(),
            &RatMatrix::from_rows(vec![m.flat().to_vec()]),
        ]);
        stacked.rank() == self.vectorized().rank()
    }
}

/// Basis of the invariant vectors of a permutation representation: one orbit
/// indicator per orbit, in orbit order.
pub fn invariant_basis(rep: &PermRep) -> Vec<Vec<Rational>> {
    rep.orbits()
        .iter()
        .map(|orbit| {
            let mut v = vec![Rational::zero(); rep.dim()];
            for &x in orbit {
                v[x] = num::One::one();
            }
            v
        })
        .collect()
}

/// Basis of `Hom_G(V, W)` as the kernel of the stacked commutation
/// constraints `φ·ρ_V(g) − ρ_W(g)·φ = 0` over the group's generators,
/// reshaped back to matrices.
///
/// Each constraint row has at most two nonzero entries, so the elimination
/// stays near-linear despite the `dim(W)·dim(V)` unknowns.
pub fn commutant_basis(v: &PermRep, w: &PermRep) -> Result<EquivariantBasis, EquivariantError> {
    if !Group::same_group(v.group(), w.group()) {
        return Err(crate::groups::GroupError::GroupMismatch.into());
    }
    let group = v.group();
    let (sdim, tdim) = (v.dim(), w.dim());
    let unknowns = tdim * sdim;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &g in group.generator_indices() {
        let ginv = group.inverse(g);
        for k in 0..tdim {
            for i in 0..sdim {
                // (φ ρ_V(g))_{k,i} = φ_{k, g·i}; (ρ_W(g) φ)_{k,i} = φ_{g⁻¹·k, i}.
                let a = k * sdim + v.gset().act(g, i);
                let b = w.gset().act(ginv, k) * sdim + i;
                if a == b {
                    continue;
                }
                let mut row = vec![Rational::zero(); unknowns];
                row[a] = num::One::one();
                row[b] = ratio(-1, 1);
                rows.push(row);
            }
        }
    }
    let constraints = if rows.is_empty() {
        RatMatrix::zeros(0, unknowns)
    } else {
        RatMatrix::from_rows(rows)
    };
    let kernel = constraints.nullspace_basis();
    let generators = (0..kernel.rows())
        .map(|r| {
            let flat = kernel.row(r);
            RatMatrix::from_fn(tdim, sdim, |i, j| flat[i * sdim + j].clone())
        })
        .collect();
    Ok(EquivariantBasis::from_solver(v.clone(), w.clone(), generators))
}

/// Basis of `Hom_G(R^{G/K}, R^{G/H})`: one generator per double coset
/// `HgK`, with entry `1/|K|` at `(sH, kK)` exactly when `sH ⊆ kKg⁻¹H`.
pub fn double_coset_basis(
    k: &Subgroup,
    h: &Subgroup,
) -> Result<EquivariantBasis, EquivariantError> {
    if !Group::same_group(k.parent(), h.parent()) {
        return Err(crate::groups::GroupError::GroupMismatch.into());
    }
    let group = k.parent();
    let source_cs = cosets(group, k)?;
    let target_cs = cosets(group, h)?;
    let classes = double_cosets(h, group, k)?;
    let entry = ratio(1, k.order() as i64);
    let mut generators = Vec::with_capacity(classes.count());
    for &g in classes.representatives() {
        let ginv = group.inverse(g);
        let mut m = RatMatrix::zeros(target_cs.count(), source_cs.count());
        for (c, &rep) in source_cs.representatives().iter().enumerate() {
            for &t in k.members() {
                // sH = (k·t·g⁻¹)H ranges over the H-cosets inside kKg⁻¹H.
                let s = group.mul(group.mul(rep, t), ginv);
                m.set(target_cs.coset_of(s), c, entry.clone());
            }
        }
        generators.push(m);
    }
    let source = PermRep::new(crate::groups::GSet::from_cosets(&source_cs));
    let target = PermRep::new(crate::groups::GSet::from_cosets(&target_cs));
    Ok(EquivariantBasis::from_solver(source, target, generators))
}
