//! The twin-network transform: `ρ(N(M₁,…,M_d)) = I(N(M̄₁,…,M̄_{d−1}, M'_d))`.
//!
//! Evaluating two copies of a network on `α` and `β` and subtracting the
//! outputs is itself a network on `V₀ ⊕ V₀`: intermediate layers become
//! block-diagonal with bias indicators shared between the two copies
//! (complete bias subordinate to the duplicate partition), and the final
//! layer's bias cancels in the difference, leaving the null-bias generators
//! `[A | −A]`.

use super::SeparationError;
use crate::equivariant::{Architecture, BiasSpec, EquivariantBasis, LayerSpace, PermRep};
use crate::exactlin::RatMatrix;

/// The twin of an [`Architecture`]: hidden layers over the pair
/// representations, plus the null-bias final generator list.
#[derive(Debug, Clone)]
pub struct TwinArchitecture {
    /// Twin hidden layers `M̄₁, …, M̄_{d−1}`, each with complete bias
    /// subordinate to the duplicate partition.
    pub layers: Vec<LayerSpace>,
    /// Generators `[A | −A]` of `M'_d`, mapping the doubled last hidden
    /// representation to the original output space.
    pub final_generators: Vec<RatMatrix>,
    /// `V₀ ⊕ V₀`, the space the twin consumes and the relation lives in.
    pub pair_input: PermRep,
}

impl TwinArchitecture {
    pub fn ambient_dim(&self) -> usize {
        self.pair_input.dim()
    }
}

/// Builds the twin architecture of a validated architecture.
pub fn twin_transform(arch: &Architecture) -> Result<TwinArchitecture, SeparationError> {
    let depth = arch.depth();
    let pair_input = PermRep::sum(arch.input_rep(), arch.input_rep())?;
    let mut layers = Vec::with_capacity(depth - 1);
    for layer in &arch.layers()[..depth - 1] {
        layers.push(twin_layer(layer)?);
    }
    let last = &arch.layers()[depth - 1];
    let final_generators = last
        .linear_generators()
        .generators()
        .iter()
        .map(|a| RatMatrix::hstack(a, &a.neg()))
        .collect();
    Ok(TwinArchitecture {
        layers,
        final_generators,
        pair_input,
    })
}

fn twin_layer(layer: &LayerSpace) -> Result<LayerSpace, SeparationError> {
    let source = PermRep::sum(layer.source(), layer.source())?;
    let target = PermRep::sum(layer.target(), layer.target())?;
    let generators: Vec<RatMatrix> = layer
        .linear_generators()
        .generators()
        .iter()
        .map(|phi| RatMatrix::block_diag(phi, phi))
        .collect();
    let linear = EquivariantBasis::explicit(source, target, generators)?;
    let partition = layer
        .bias()
        .partition()
        .ok_or_else(|| {
            SeparationError::InvalidQuery(
                "twin transform requires complete bias on intermediate layers".into(),
            )
        })?
        .duplicate();
    Ok(LayerSpace::new(linear, BiasSpec::Complete(partition))?)
}
