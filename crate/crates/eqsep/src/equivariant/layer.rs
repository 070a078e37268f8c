//! Layer spaces — a span of equivariant linear generators plus a bias
//! specification — and validated architectures built from them.

use std::sync::Arc;

use num::Zero;

use super::{commutant_basis, EquivariantBasis, EquivariantError, PermRep};
use crate::exactlin::{RatMatrix, Rational};
use crate::groups::Group;
use crate::partitions::SetPartition;

/// Hard cap on representation dimension for the IGN builder; index spaces
/// grow as `n^k · f` and anything past this is not tractable symbolically.
pub const IGN_DIM_CAP: usize = 4096;

/// The translational part of a layer space.
///
/// `Complete` bias spans the indicators `1_P` of a partition of the target
/// points whose parts are unions of orbits (so each `1_P` is invariant);
/// `Null` bias means a purely linear layer. Anything in between is rejected
/// at validation: the zero-locus engine requires complete intermediate bias.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BiasSpec {
    Complete(SetPartition),
    Null,
}

impl BiasSpec {
    pub fn part_count(&self) -> usize {
        match self {
            BiasSpec::Complete(p) => p.block_count(),
            BiasSpec::Null => 0,
        }
    }

    pub fn partition(&self) -> Option<&SetPartition> {
        match self {
            BiasSpec::Complete(p) => Some(p),
            BiasSpec::Null => None,
        }
    }
}

/// A subspace of `Aff_G(V, W)`: the span of independent equivariant linear
/// generators together with a bias spec, i.e. maps
/// `v ↦ Σ xᵢ φⁱ(v) + Σ y_P 1_P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSpace {
    linear: EquivariantBasis,
    bias: BiasSpec,
}

impl LayerSpace {
    pub fn new(linear: EquivariantBasis, bias: BiasSpec) -> Result<Self, EquivariantError> {
        if let BiasSpec::Complete(partition) = &bias {
            let target = linear.target();
            if partition.ground_size() != target.dim() {
                return Err(EquivariantError::InvalidArchitecture(format!(
                    "bias partition covers {} points, target has {}",
                    partition.ground_size(),
                    target.dim()
                )));
            }
            // Each part must be a union of orbits, else 1_P is not invariant.
            let owner = partition.block_of();
            for (part, block) in partition.blocks().iter().enumerate() {
                for orbit in target.orbits() {
                    let inside = orbit.iter().filter(|&&x| owner[x] == part).count();
                    if inside != 0 && inside != orbit.len() {
                        return Err(EquivariantError::BiasNotOrbitUnion { part });
                    }
                }
                let _ = block;
            }
        }
        Ok(LayerSpace { linear, bias })
    }

    pub fn source(&self) -> &PermRep {
        self.linear.source()
    }

    pub fn target(&self) -> &PermRep {
        self.linear.target()
    }

    pub fn linear_generators(&self) -> &EquivariantBasis {
        &self.linear
    }

    pub fn bias(&self) -> &BiasSpec {
        &self.bias
    }

    pub fn group(&self) -> &Arc<Group> {
        self.linear.source().group()
    }

    /// Bias indicator vectors `1_P`, one per part, in partition order.
    pub fn bias_vectors(&self) -> Vec<Vec<Rational>> {
        match &self.bias {
            BiasSpec::Null => Vec::new(),
            BiasSpec::Complete(p) => p
                .blocks()
                .iter()
                .map(|block| {
                    let mut v = vec![Rational::zero(); self.target().dim()];
                    for &x in block {
                        v[x] = num::One::one();
                    }
                    v
                })
                .collect(),
        }
    }
}

/// The orbit partition of a representation's point set.
pub fn orbit_partition(rep: &PermRep) -> SetPartition {
    SetPartition::new(rep.dim(), rep.orbits().to_vec()).expect("orbits partition the points")
}

/// The full space `Aff_G(V, W)`: commutant basis plus complete bias
/// subordinate to the orbit partition of the target.
pub fn full_layer(v: &PermRep, w: &PermRep) -> Result<LayerSpace, EquivariantError> {
    let linear = commutant_basis(v, w)?;
    LayerSpace::new(linear, BiasSpec::Complete(orbit_partition(w)))
}

/// The circular convolution layer space with filter size `k` on `Z_n`:
/// generators `C(e_1), …, C(e_k)` (first column `e_i`, circulant extension)
/// plus the all-ones bias.
pub fn circular_layer(n: usize, k: usize) -> Result<LayerSpace, EquivariantError> {
    if k < 1 || k > n {
        return Err(EquivariantError::FilterSize { k, n });
    }
    let group = Group::cyclic(n);
    let rep = PermRep::natural(&group);
    let generators: Vec<RatMatrix> = (0..k)
        .map(|i| {
            RatMatrix::from_fn(n, n, |r, c| {
                if (r + n - c) % n == i {
                    num::One::one()
                } else {
                    Rational::zero()
                }
            })
        })
        .collect();
    let linear = EquivariantBasis::explicit(rep.clone(), rep, generators)?;
    LayerSpace::new(linear, BiasSpec::Complete(SetPartition::one_block(n)))
}

/// An order-`k` IGN layer at node count `n` with input/output feature
/// multiplicities: maps `R^{[n]^k} ⊗ R^{f_in} → R^{[n]^k} ⊗ R^{f_out}`,
/// generated by the base commutant tensored with elementary matrices, with
/// complete bias on the orbit partition replicated across output copies.
pub fn ign_layer(
    n: usize,
    k: usize,
    mult_in: usize,
    mult_out: usize,
) -> Result<LayerSpace, EquivariantError> {
    let base_dim = n.pow(k as u32);
    let dim = base_dim * mult_in.max(mult_out);
    if dim > IGN_DIM_CAP {
        return Err(EquivariantError::SizeCap {
            dim,
            cap: IGN_DIM_CAP,
        });
    }
    let group = Group::symmetric(n);
    let base = PermRep::power(&group, k)?;
    let source = PermRep::mult(&base, mult_in)?;
    let target = PermRep::mult(&base, mult_out)?;
    let base_commutant = commutant_basis(&base, &base)?;
    let mut generators = Vec::with_capacity(mult_out * mult_in * base_commutant.count());
    for a in 0..mult_out {
        for b in 0..mult_in {
            let mut unit = RatMatrix::zeros(mult_out, mult_in);
            unit.set(a, b, num::One::one());
            for phi in base_commutant.generators() {
                generators.push(RatMatrix::kronecker(&unit, phi));
            }
        }
    }
    let linear = EquivariantBasis::explicit(source, target.clone(), generators)?;
    LayerSpace::new(linear, BiasSpec::Complete(orbit_partition(&target)))
}

/// A validated sequence of layer spaces: consecutive representations match,
/// all layers share one group, intermediate layers have complete bias, and
/// the final layer has complete or null bias. The activation tag is carried
/// for the floating-point oracle only; the symbolic engine never reads it.
#[derive(Debug, Clone)]
pub struct Architecture {
    layers: Vec<LayerSpace>,
    activation_tag: String,
}

impl Architecture {
    pub fn new(layers: Vec<LayerSpace>, activation_tag: &str) -> Result<Self, EquivariantError> {
        if layers.is_empty() {
            return Err(EquivariantError::InvalidArchitecture(
                "architecture needs at least one layer".into(),
            ));
        }
        let group = layers[0].group();
        for (i, layer) in layers.iter().enumerate() {
            if !Group::same_group(layer.group(), group) {
                return Err(EquivariantError::InvalidArchitecture(format!(
                    "layer {i} acts under a different group"
                )));
            }
        }
        for i in 0..layers.len() - 1 {
            if layers[i].target().gset() != layers[i + 1].source().gset() {
                return Err(EquivariantError::InvalidArchitecture(format!(
                    "layer {i} target does not match layer {} source",
                    i + 1
                )));
            }
            if layers[i].bias() == &BiasSpec::Null {
                return Err(EquivariantError::InvalidArchitecture(format!(
                    "intermediate layer {i} must have complete bias; the zero-locus \
                     engine's recursion requires it"
                )));
            }
        }
        Ok(Architecture {
            layers,
            activation_tag: activation_tag.to_string(),
        })
    }

    pub fn layers(&self) -> &[LayerSpace] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn activation_tag(&self) -> &str {
        &self.activation_tag
    }

    pub fn input_rep(&self) -> &PermRep {
        self.layers[0].source()
    }

    pub fn output_rep(&self) -> &PermRep {
        self.layers[self.layers.len() - 1].target()
    }

    pub fn group(&self) -> &Arc<Group> {
        self.layers[0].group()
    }

    /// Structure-identical copy with a repeated block: layer `index` appears
    /// `times` times in a row. Requires that layer to map a representation to
    /// itself.
    pub fn with_repeated_layer(
        &self,
        index: usize,
        times: usize,
    ) -> Result<Architecture, EquivariantError> {
        if index >= self.layers.len() {
            return Err(EquivariantError::InvalidArchitecture(format!(
                "layer index {index} out of range"
            )));
        }
        if times == 0 {
            return Err(EquivariantError::InvalidArchitecture(
                "repetition count must be positive".into(),
            ));
        }
        let layer = &self.layers[index];
        if layer.source().gset() != layer.target().gset() {
            return Err(EquivariantError::InvalidArchitecture(
                "only layers with equal source and target can be repeated".into(),
            ));
        }
        let mut layers = Vec::with_capacity(self.layers.len() + times - 1);
        layers.extend(self.layers[..index].iter().cloned());
        for _ in 0..times {
            layers.push(layer.clone());
        }
        layers.extend(self.layers[index + 1..].iter().cloned());
        Architecture::new(layers, &self.activation_tag)
    }

    /// Canonical structural serialization; the digest of this value
    /// identifies the architecture in reports and caches.
    pub fn canonical_descriptor(&self) -> serde_json::Value {
        use serde_json::json;
        let group = self.group();
        let elements: Vec<Vec<usize>> = group
            .elements()
            .iter()
            .map(|p| p.images().to_vec())
            .collect();
        let layers: Vec<serde_json::Value> = self
            .layers
            .iter()
            .map(|layer| {
                let gens: Vec<Vec<String>> = layer
                    .linear_generators()
                    .generators()
                    .iter()
                    .map(|m| m.flat().iter().map(|e| e.to_string()).collect())
                    .collect();
                let bias = match layer.bias() {
                    BiasSpec::Null => json!("null"),
                    BiasSpec::Complete(p) => json!(p.blocks()),
                };
                json!({
                    "source_action": action_table(layer.source()),
                    "target_action": action_table(layer.target()),
                    "generators": gens,
                    "bias": bias,
                })
            })
            .collect();
        json!({
            "group": elements,
            "layers": layers,
            "activation": self.activation_tag,
        })
    }

    /// Hex SHA-256 digest of the canonical serialization.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let canonical = serde_json::to_string(&self.canonical_descriptor())
            .expect("descriptor serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn action_table(rep: &PermRep) -> Vec<Vec<usize>> {
    (0..rep.group().order())
        .map(|g| (0..rep.dim()).map(|x| rep.gset().act(g, x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_layer_counts_on_z3_regular() {
        let g = Group::cyclic(3);
        let rep = PermRep::regular(&g);
        let layer = full_layer(&rep, &rep).unwrap();
        assert_eq!(layer.linear_generators().count(), 3);
        assert_eq!(layer.bias().part_count(), 1);
    }

    #[test]
    fn full_layer_into_trivial_rep_has_single_bias_part() {
        let g = Group::symmetric(3);
        let v = PermRep::power(&g, 2).unwrap();
        let w = PermRep::trivial(&g);
        let layer = full_layer(&v, &w).unwrap();
        assert_eq!(layer.bias().part_count(), 1);
        assert_eq!(layer.linear_generators().count(), v.orbits().len());
    }

    #[test]
    fn circular_layer_generators() {
        let layer = circular_layer(3, 2).unwrap();
        assert_eq!(layer.linear_generators().count(), 2);
        assert_eq!(layer.bias().part_count(), 1);
        // k = 1 is the identity filter.
        let identity = circular_layer(4, 1).unwrap();
        assert_eq!(
            identity.linear_generators().generators()[0],
            RatMatrix::identity(4)
        );
        // k = n is the full circulant algebra: span equals the commutant.
        let full = circular_layer(4, 4).unwrap();
        let g = Group::cyclic(4);
        let rep = PermRep::natural(&g);
        let commutant = commutant_basis(&rep, &rep).unwrap();
        assert!(full.linear_generators().span_equals(&commutant));
        assert!(circular_layer(3, 0).is_err());
        assert!(circular_layer(3, 4).is_err());
    }

    #[test]
    fn ign_layer_shapes() {
        let layer = ign_layer(3, 2, 1, 1).unwrap();
        assert_eq!(layer.source().dim(), 9);
        assert_eq!(layer.target().dim(), 9);
        assert_eq!(layer.bias().part_count(), 2);

        // Output multiplicity 3 triples generators and bias parts.
        let wide = ign_layer(3, 2, 1, 3).unwrap();
        assert_eq!(wide.linear_generators().count(), 3 * layer.linear_generators().count());
        assert_eq!(wide.bias().part_count(), 3 * layer.bias().part_count());

        // n = 4 hits the 15-dimensional commutant.
        let n4 = ign_layer(4, 2, 1, 1).unwrap();
        assert_eq!(n4.linear_generators().count(), 15);

        assert!(matches!(
            ign_layer(10, 4, 1, 1),
            Err(EquivariantError::SizeCap { .. })
        ));
    }

    #[test]
    fn bias_vectors_are_invariant() {
        let g = Group::symmetric(3);
        let v = PermRep::power(&g, 2).unwrap();
        let layer = full_layer(&v, &v).unwrap();
        for bias in layer.bias_vectors() {
            for e in 0..g.order() {
                let mapped = v.matrix(e).mul_vec(&bias);
                assert_eq!(mapped, bias);
            }
        }
    }

    #[test]
    fn bias_partition_finer_than_orbits_is_rejected() {
        let g = Group::cyclic(3);
        let rep = PermRep::regular(&g);
        let linear = commutant_basis(&rep, &rep).unwrap();
        // Splitting the single orbit breaks invariance of the indicators.
        let bad = SetPartition::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        assert!(matches!(
            LayerSpace::new(linear, BiasSpec::Complete(bad)),
            Err(EquivariantError::BiasNotOrbitUnion { .. })
        ));
    }

    #[test]
    fn coarser_union_of_orbits_is_accepted() {
        let g = Group::symmetric(3);
        let v = PermRep::power(&g, 2).unwrap();
        let linear = commutant_basis(&v, &v).unwrap();
        let coarse = SetPartition::one_block(9);
        assert!(LayerSpace::new(linear, BiasSpec::Complete(coarse)).is_ok());
    }

    #[test]
    fn architecture_validation() {
        let g = Group::cyclic(3);
        let rep = PermRep::regular(&g);
        let hidden = full_layer(&rep, &rep).unwrap();
        let readout = full_layer(&rep, &PermRep::trivial(&g)).unwrap();
        let arch = Architecture::new(vec![hidden.clone(), readout.clone()], "relu").unwrap();
        assert_eq!(arch.depth(), 2);
        assert_eq!(arch.input_rep().dim(), 3);
        assert_eq!(arch.output_rep().dim(), 1);

        // Mismatched chain.
        assert!(Architecture::new(vec![readout.clone(), hidden.clone()], "relu").is_err());

        // Null bias in an intermediate layer is rejected.
        let null_hidden = LayerSpace::new(
            commutant_basis(&rep, &rep).unwrap(),
            BiasSpec::Null,
        )
        .unwrap();
        assert!(Architecture::new(vec![null_hidden.clone(), readout.clone()], "relu").is_err());
        // But a null-bias final layer is fine.
        assert!(Architecture::new(
            vec![hidden, LayerSpace::new(commutant_basis(&rep, &PermRep::trivial(&g)).unwrap(), BiasSpec::Null).unwrap()],
            "relu"
        )
        .is_ok());
    }

    #[test]
    fn digest_is_stable_and_activation_sensitive() {
        let g = Group::cyclic(2);
        let rep = PermRep::regular(&g);
        let layer = full_layer(&rep, &rep).unwrap();
        let a = Architecture::new(vec![layer.clone()], "relu").unwrap();
        let b = Architecture::new(vec![layer.clone()], "relu").unwrap();
        let c = Architecture::new(vec![layer], "tanh").unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), c.digest());
    }

    #[test]
    fn repeated_layer_expands_in_place() {
        let g = Group::cyclic(3);
        let rep = PermRep::regular(&g);
        let hidden = full_layer(&rep, &rep).unwrap();
        let readout = full_layer(&rep, &PermRep::trivial(&g)).unwrap();
        let arch = Architecture::new(vec![hidden, readout], "relu").unwrap();
        let deeper = arch.with_repeated_layer(0, 3).unwrap();
        assert_eq!(deeper.depth(), 4);
        assert!(arch.with_repeated_layer(1, 2).is_err()); // readout not square
    }
}
