//! Theorem-level verification drivers: depth stabilization, width and
//! multiplicity invariance, and the subgroup hierarchy, plus the small
//! architecture builders the drivers and the acceptance suite share.

use std::sync::Arc;

use super::engine::{rho, EngineLimits};
use super::relations::{compare, Comparison, IdentificationRelation};
use super::SeparationError;
use crate::equivariant::{circular_layer, commutant_basis, full_layer, Architecture, PermRep};
use crate::exactlin::RatMatrix;
use crate::groups::{Group, Subgroup};

/// `N(R^G, R^G, R^{G/H})` with full layers: input and hidden are the regular
/// representation, the readout lands in the coset representation.
pub fn shallow_regular_arch(
    group: &Arc<Group>,
    h: &Subgroup,
    activation_tag: &str,
) -> Result<Architecture, SeparationError> {
    let regular = PermRep::regular(group);
    let out = PermRep::from_cosets(group, h)?;
    shallow_hidden_arch(&regular, &regular, &out, activation_tag)
}

/// `N(V, W, U)` with full layers.
pub fn shallow_hidden_arch(
    source: &PermRep,
    hidden: &PermRep,
    target: &PermRep,
    activation_tag: &str,
) -> Result<Architecture, SeparationError> {
    let first = full_layer(source, hidden)?;
    let second = full_layer(hidden, target)?;
    Ok(Architecture::new(vec![first, second], activation_tag)?)
}

/// The shallow circular CNN `N(M^k, Aff(R^n, R))` on `Z_n`: one filter of
/// size `k` followed by an invariant readout.
pub fn cnn_arch(n: usize, k: usize, activation_tag: &str) -> Result<Architecture, SeparationError> {
    let filter = circular_layer(n, k)?;
    let group = filter.group().clone();
    let readout = full_layer(filter.target(), &PermRep::trivial(&group))?;
    Ok(Architecture::new(vec![filter, readout], activation_tag)?)
}

/// Result of probing the repetition threshold of a layer.
#[derive(Debug)]
pub struct StabilizationOutcome {
    /// Smallest `R` with `ρ_R = ρ_{R+1}`, or `None` when the chain has not
    /// stabilized by `max_reps`. Empirical only — no universal bound is
    /// claimed beyond the probed range.
    pub threshold: Option<usize>,
    /// Whether `ρ_{m+1} ⊆ ρ_m` held along the whole probed chain.
    pub monotone: bool,
    /// The relations for 1, 2, …, `max_reps` repetitions.
    pub relations: Vec<IdentificationRelation>,
}

/// Computes `ρ` with layer `repeat_index` repeated 1, …, `max_reps` times,
/// verifies the chain is monotone nonincreasing, and reports the smallest
/// repetition count after which it stops changing.
///
/// The repeated layer must map a representation to itself and contain the
/// identity map in its span, so that repeating it can only refine the
/// relation.
pub fn depth_stabilization_threshold(
    arch: &Architecture,
    repeat_index: usize,
    max_reps: usize,
    limits: &EngineLimits,
) -> Result<StabilizationOutcome, SeparationError> {
    if max_reps < 2 {
        return Err(SeparationError::InvalidQuery(
            "need max_reps >= 2 to probe stabilization".into(),
        ));
    }
    let layer = arch.layers().get(repeat_index).ok_or_else(|| {
        SeparationError::InvalidQuery(format!("layer index {repeat_index} out of range"))
    })?;
    if layer.source().gset() != layer.target().gset() {
        return Err(SeparationError::InvalidQuery(
            "repeated layer must have equal source and target".into(),
        ));
    }
    let identity = RatMatrix::identity(layer.source().dim());
    if !layer.linear_generators().span_contains(&identity) {
        return Err(SeparationError::InvalidQuery(
            "repeated layer must contain the identity map in its span".into(),
        ));
    }
    let mut relations = Vec::with_capacity(max_reps);
    for m in 1..=max_reps {
        let repeated = arch.with_repeated_layer(repeat_index, m)?;
        relations.push(rho(&repeated, limits)?);
    }
    let mut monotone = true;
    for w in relations.windows(2) {
        if !w[1].relation.is_subset(&w[0].relation)? {
            monotone = false;
        }
    }
    let mut threshold = None;
    for (idx, w) in relations.windows(2).enumerate() {
        if w[0].relation.eq_as_sets(&w[1].relation)? {
            threshold = Some(idx + 1);
            break;
        }
    }
    Ok(StabilizationOutcome {
        threshold,
        monotone,
        relations,
    })
}

/// Checks that replacing hidden representation `V_i` (the target of layer
/// `hidden_index`) by `V_i ⊗ R^f` leaves the relation unchanged. The layers
/// adjacent to the hidden representation must be full affine spaces.
pub fn verify_width_invariance(
    arch: &Architecture,
    hidden_index: usize,
    f: usize,
    limits: &EngineLimits,
) -> Result<bool, SeparationError> {
    if f == 0 {
        return Err(SeparationError::InvalidQuery(
            "multiplicity must be positive".into(),
        ));
    }
    let hidden = hidden_rep(arch, hidden_index)?;
    let widened = PermRep::mult(&hidden, f)?;
    let base = rho(arch, limits)?;
    let modified = rho(&with_hidden_rep(arch, hidden_index, &widened)?, limits)?;
    Ok(base.relation.eq_as_sets(&modified.relation)?)
}

/// Checks the split law `ρ(V' ⊕ V'') = ρ(V') ∩ ρ(V'')` at the hidden
/// representation targeted by layer `hidden_index`.
pub fn verify_split_invariance(
    arch: &Architecture,
    hidden_index: usize,
    left: &PermRep,
    right: &PermRep,
    limits: &EngineLimits,
) -> Result<bool, SeparationError> {
    let sum = PermRep::sum(left, right)?;
    let whole = rho(&with_hidden_rep(arch, hidden_index, &sum)?, limits)?;
    let left_rel = rho(&with_hidden_rep(arch, hidden_index, left)?, limits)?;
    let right_rel = rho(&with_hidden_rep(arch, hidden_index, right)?, limits)?;
    let meet = left_rel.relation.intersect(&right_rel.relation)?;
    Ok(whole.relation.eq_as_sets(&meet)?)
}

/// For `K < H < G`, checks `ρ(N(V, R^{G/K}, W)) ⊆ ρ(N(V, R^{G/H}, W))` by
/// exact comparison; returns `true` when the comparison is `Equal` or
/// `StrictSubset`.
pub fn verify_subgroup_hierarchy(
    k: &Subgroup,
    h: &Subgroup,
    source: &PermRep,
    target: &PermRep,
    limits: &EngineLimits,
) -> Result<bool, SeparationError> {
    if !k.is_subgroup_of(h) {
        return Err(SeparationError::InvalidQuery(
            "need K <= H <= G for the hierarchy check".into(),
        ));
    }
    let group = source.group();
    let fine = rho(
        &shallow_hidden_arch(source, &PermRep::from_cosets(group, k)?, target, "relu")?,
        limits,
    )?;
    let coarse = rho(
        &shallow_hidden_arch(source, &PermRep::from_cosets(group, h)?, target, "relu")?,
        limits,
    )?;
    Ok(matches!(
        compare(&fine.relation, &coarse.relation)?,
        Comparison::Equal | Comparison::StrictSubset
    ))
}

fn hidden_rep(arch: &Architecture, hidden_index: usize) -> Result<PermRep, SeparationError> {
    if hidden_index + 1 >= arch.depth() {
        return Err(SeparationError::InvalidQuery(format!(
            "hidden index {hidden_index} does not name a hidden representation \
             of a depth-{} architecture",
            arch.depth()
        )));
    }
    Ok(arch.layers()[hidden_index].target().clone())
}

/// Rebuilds the architecture with the hidden representation after layer
/// `hidden_index` replaced, regenerating the two adjacent layers as full
/// layer spaces. Errors if those layers were not full to begin with, since
/// the substitution would silently change the rest of the space.
fn with_hidden_rep(
    arch: &Architecture,
    hidden_index: usize,
    new_rep: &PermRep,
) -> Result<Architecture, SeparationError> {
    let old = hidden_rep(arch, hidden_index)?;
    let into = &arch.layers()[hidden_index];
    let out_of = &arch.layers()[hidden_index + 1];
    for (layer, (s, t)) in [
        (into, (into.source().clone(), old.clone())),
        (out_of, (old.clone(), out_of.target().clone())),
    ] {
        let full = commutant_basis(&s, &t)?;
        if !layer.linear_generators().span_equals(&full) {
            return Err(SeparationError::InvalidQuery(
                "width checks require the layers adjacent to the hidden \
                 representation to be full affine spaces"
                    .into(),
            ));
        }
    }
    let mut layers = arch.layers().to_vec();
    layers[hidden_index] = full_layer(into.source(), new_rep)?;
    layers[hidden_index + 1] = full_layer(new_rep, out_of.target())?;
    Ok(Architecture::new(layers, arch.activation_tag())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separation::h_orbit_relation;

    #[test]
    fn shallow_regular_arch_on_z3_matches_orbit_relation() {
        let g = Group::cyclic(3);
        let h = Subgroup::full(&g);
        let arch = shallow_regular_arch(&g, &h, "relu").unwrap();
        let rel = rho(&arch, &EngineLimits::default()).unwrap();
        let expected = h_orbit_relation(&h, &PermRep::regular(&g)).unwrap();
        assert!(rel.relation.eq_as_sets(&expected).unwrap());
        rel.check_invariants(arch.input_rep()).unwrap();
    }

    #[test]
    fn repeating_an_identity_only_layer_changes_nothing() {
        let layer = circular_layer(2, 1).unwrap();
        let group = layer.group().clone();
        let readout = full_layer(layer.target(), &PermRep::trivial(&group)).unwrap();
        let arch = Architecture::new(vec![layer, readout], "relu").unwrap();
        let outcome =
            depth_stabilization_threshold(&arch, 0, 3, &EngineLimits::default()).unwrap();
        assert_eq!(outcome.threshold, Some(1));
        assert!(outcome.monotone);
        for w in outcome.relations.windows(2) {
            assert!(w[0].relation.eq_as_sets(&w[1].relation).unwrap());
        }
    }

    #[test]
    fn stabilization_rejects_layers_without_identity() {
        // A filter layer whose span lacks the identity map: the shift-only
        // filter on Z_2... use C(e_2) alone via an explicit basis.
        let g = Group::cyclic(2);
        let rep = PermRep::natural(&g);
        let shift = rep.matrix(1);
        let basis =
            crate::equivariant::EquivariantBasis::explicit(rep.clone(), rep.clone(), vec![shift])
                .unwrap();
        let layer = crate::equivariant::LayerSpace::new(
            basis,
            crate::equivariant::BiasSpec::Complete(crate::partitions::SetPartition::one_block(2)),
        )
        .unwrap();
        let readout = full_layer(&rep, &PermRep::trivial(&g)).unwrap();
        let arch = Architecture::new(vec![layer, readout], "relu").unwrap();
        assert!(matches!(
            depth_stabilization_threshold(&arch, 0, 2, &EngineLimits::default()),
            Err(SeparationError::InvalidQuery(_))
        ));
    }

    #[test]
    fn width_invariance_multiplicity_one_is_trivially_equal() {
        let g = Group::cyclic(2);
        let arch = shallow_regular_arch(&g, &Subgroup::full(&g), "relu").unwrap();
        assert!(verify_width_invariance(&arch, 0, 1, &EngineLimits::default()).unwrap());
    }

    #[test]
    fn hierarchy_rejects_non_nested_subgroups() {
        let g = Group::symmetric(3);
        let a3 = Subgroup::alternating(&g);
        let t = Subgroup::generated(
            &g,
            &[crate::groups::Permutation::new(vec![1, 0, 2]).unwrap()],
        )
        .unwrap();
        let source = PermRep::regular(&g);
        let target = PermRep::trivial(&g);
        assert!(matches!(
            verify_subgroup_hierarchy(&a3, &t, &source, &target, &EngineLimits::default()),
            Err(SeparationError::InvalidQuery(_))
        ));
    }
}
