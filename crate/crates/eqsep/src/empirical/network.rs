//! Concrete floating-point networks drawn from an architecture's parameter
//! space, and their evaluation.

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::EmpiricalError;
use crate::equivariant::Architecture;

/// Point-wise activation functions. ReLU, tanh, and sigmoid are the
/// non-polynomial activations the engine's verdicts apply to; the identity is
/// polynomial and exists for debugging the affine plumbing only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActivationKind {
    ReLU,
    Tanh,
    Sigmoid,
    Identity,
}

impl ActivationKind {
    pub fn parse(tag: &str) -> Result<Self, EmpiricalError> {
        match tag.to_ascii_lowercase().as_str() {
            "relu" => Ok(ActivationKind::ReLU),
            "tanh" => Ok(ActivationKind::Tanh),
            "sigmoid" => Ok(ActivationKind::Sigmoid),
            "identity" | "id" => Ok(ActivationKind::Identity),
            other => Err(EmpiricalError::UnknownActivation(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ActivationKind::ReLU => "relu",
            ActivationKind::Tanh => "tanh",
            ActivationKind::Sigmoid => "sigmoid",
            ActivationKind::Identity => "identity",
        }
    }

    pub fn apply(&self, x: f64) -> f64 {
        match self {
            ActivationKind::ReLU => x.max(0.0),
            ActivationKind::Tanh => x.tanh(),
            ActivationKind::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            ActivationKind::Identity => x,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, ActivationKind::Identity)
    }
}

/// One layer's parameters: a coefficient per linear generator and one per
/// bias part.
#[derive(Debug, Clone)]
pub struct LayerCoefficients {
    pub linear: Vec<f64>,
    pub bias: Vec<f64>,
}

/// A concrete network from a neural space: per-layer coefficients over the
/// layer's generators plus the activation applied between layers.
#[derive(Debug, Clone)]
pub struct FloatNetwork {
    pub layers: Vec<LayerCoefficients>,
    pub activation: ActivationKind,
}

impl FloatNetwork {
    pub fn scaled(&self, factor: f64) -> FloatNetwork {
        FloatNetwork {
            layers: self
                .layers
                .iter()
                .map(|l| LayerCoefficients {
                    linear: l.linear.iter().map(|c| c * factor).collect(),
                    bias: l.bias.iter().map(|c| c * factor).collect(),
                })
                .collect(),
            activation: self.activation,
        }
    }
}

const KIND_LINEAR: u64 = 0x11;
const KIND_BIAS: u64 = 0x22;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key(seed: u64, layer: u64, kind: u64, index: u64) -> u64 {
    let mut h = splitmix64(seed);
    for part in [layer, kind, index] {
        h = splitmix64(h ^ part);
    }
    h
}

/// One standard-normal draw from a counter-based stream keyed by the
/// structural position of the coefficient. Identical keys give identical
/// draws regardless of evaluation order, which keeps sampling reproducible
/// under any parallel schedule.
fn keyed_normal(seed: u64, layer: u64, kind: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(key(seed, layer, kind, index));
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Samples a network with i.i.d. standard-normal coefficients keyed by
/// `(seed, layer, index)`.
pub fn sample_network(arch: &Architecture, activation: ActivationKind, seed: u64) -> FloatNetwork {
    let layers = arch
        .layers()
        .iter()
        .enumerate()
        .map(|(l, layer)| LayerCoefficients {
            linear: (0..layer.linear_generators().count())
                .map(|i| keyed_normal(seed, l as u64, KIND_LINEAR, i as u64))
                .collect(),
            bias: (0..layer.bias().part_count())
                .map(|i| keyed_normal(seed, l as u64, KIND_BIAS, i as u64))
                .collect(),
        })
        .collect();
    FloatNetwork { layers, activation }
}

/// Cached dense-f64 form of an architecture, reused across many samples.
pub(crate) struct ArchKernel {
    layers: Vec<KernelLayer>,
    input_dim: usize,
}

struct KernelLayer {
    rows: usize,
    cols: usize,
    /// Row-major dense generators.
    gens: Vec<Vec<f64>>,
    /// Point indices of each bias part.
    bias_parts: Vec<Vec<usize>>,
}

impl ArchKernel {
    pub(crate) fn new(arch: &Architecture) -> Self {
        let layers = arch
            .layers()
            .iter()
            .map(|layer| {
                let rows = layer.target().dim();
                let cols = layer.source().dim();
                let gens = layer
                    .linear_generators()
                    .generators()
                    .iter()
                    .map(|m| {
                        m.flat()
                            .iter()
                            .map(|e| e.to_f64().expect("rational fits in f64"))
                            .collect()
                    })
                    .collect();
                let bias_parts = layer
                    .bias()
                    .partition()
                    .map(|p| p.blocks().to_vec())
                    .unwrap_or_default();
                KernelLayer {
                    rows,
                    cols,
                    gens,
                    bias_parts,
                }
            })
            .collect();
        ArchKernel {
            layers,
            input_dim: arch.input_rep().dim(),
        }
    }

    pub(crate) fn input_dim(&self) -> usize {
        self.input_dim
    }

    /// Forward pass: affine layer, point-wise activation between layers,
    /// none after the final layer. `None` when a non-finite value appears.
    pub(crate) fn evaluate(
        &self,
        net: &FloatNetwork,
        input: &[f64],
    ) -> Result<Option<Vec<f64>>, EmpiricalError> {
        if input.len() != self.input_dim {
            return Err(EmpiricalError::InputLength {
                expected: self.input_dim,
                got: input.len(),
            });
        }
        if net.layers.len() != self.layers.len() {
            return Err(EmpiricalError::CoefficientMismatch {
                layer: net.layers.len().min(self.layers.len()),
            });
        }
        let mut v = input.to_vec();
        let last = self.layers.len() - 1;
        for (l, (layer, coeffs)) in self.layers.iter().zip(&net.layers).enumerate() {
            if coeffs.linear.len() != layer.gens.len()
                || coeffs.bias.len() != layer.bias_parts.len()
            {
                return Err(EmpiricalError::CoefficientMismatch { layer: l });
            }
            let mut out = vec![0.0f64; layer.rows];
            for (x, gen) in coeffs.linear.iter().zip(&layer.gens) {
                if *x == 0.0 {
                    continue;
                }
                for r in 0..layer.rows {
                    let row = &gen[r * layer.cols..(r + 1) * layer.cols];
                    let mut acc = 0.0;
                    for (a, b) in row.iter().zip(&v) {
                        acc += a * b;
                    }
                    out[r] += x * acc;
                }
            }
            for (y, part) in coeffs.bias.iter().zip(&layer.bias_parts) {
                for &p in part {
                    out[p] += y;
                }
            }
            if out.iter().any(|e| !e.is_finite()) {
                return Ok(None);
            }
            if l != last {
                for e in &mut out {
                    *e = net.activation.apply(*e);
                }
            }
            v = out;
        }
        Ok(Some(v))
    }
}

/// Evaluates a sampled network on an input vector.
pub fn evaluate(
    arch: &Architecture,
    net: &FloatNetwork,
    input: &[f64],
) -> Result<Vec<f64>, EmpiricalError> {
    match ArchKernel::new(arch).evaluate(net, input)? {
        Some(v) => Ok(v),
        None => Err(EmpiricalError::Unreliable {
            discarded: 1,
            total: 1,
        }),
    }
}
