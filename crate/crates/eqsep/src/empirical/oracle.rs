//! The Monte Carlo separation oracle.

use super::network::{sample_network, ActivationKind, ArchKernel};
use super::EmpiricalError;
use crate::equivariant::Architecture;

/// Sampling budget and tolerances for one oracle query.
///
/// The two tolerances leave a forbidden gray zone between them: a gap above
/// `tol_sep` is a separation witness, all gaps below `tol_id` mean likely
/// identification, and anything in between is float noise territory that
/// triggers resampling rather than a verdict.
#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub samples: usize,
    pub tol_sep: f64,
    pub tol_id: f64,
    pub seed: u64,
    /// Coefficient scales tried in order before concluding identification;
    /// near-degenerate separations can need unusually large or small weights.
    pub scales: Vec<f64>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            samples: 1000,
            tol_sep: 1e-4,
            tol_id: 1e-7,
            seed: 0,
            scales: vec![0.1, 1.0, 10.0],
        }
    }
}

/// Outcome of a Monte Carlo separation query.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleVerdict {
    /// Some sampled network separated the pair by more than `tol_sep`; the
    /// witness is reproducible from the recorded seed.
    Separated { witness_seed: u64, gap: f64 },
    /// Every sampled gap stayed at or below `tol_id`.
    LikelyIdentified { max_gap: f64 },
}

impl OracleVerdict {
    pub fn is_separated(&self) -> bool {
        matches!(self, OracleVerdict::Separated { .. })
    }
}

/// Samples networks from the architecture and compares their outputs on
/// `alpha` and `beta`.
///
/// Returns `Separated` on the first sample whose output gap exceeds
/// `tol_sep`; otherwise runs the whole scale ladder and returns
/// `LikelyIdentified` when every gap stayed at or below `tol_id`. A maximal
/// gap inside the gray zone triggers one full resampling round with a
/// derived seed before giving up with [`EmpiricalError::GrayZone`].
pub fn mc_separation(
    arch: &Architecture,
    activation: ActivationKind,
    alpha: &[f64],
    beta: &[f64],
    opts: &OracleOptions,
) -> Result<OracleVerdict, EmpiricalError> {
    if activation.is_polynomial() {
        return Err(EmpiricalError::PolynomialActivation(activation.name()));
    }
    let kernel = ArchKernel::new(arch);
    if alpha.len() != kernel.input_dim() || beta.len() != kernel.input_dim() {
        return Err(EmpiricalError::InputLength {
            expected: kernel.input_dim(),
            got: alpha.len().max(beta.len()),
        });
    }
    match run_budget(&kernel, arch, activation, alpha, beta, opts)? {
        BudgetOutcome::Separated(v) => Ok(v),
        BudgetOutcome::MaxGap(gap) if gap <= opts.tol_id => {
            Ok(OracleVerdict::LikelyIdentified { max_gap: gap })
        }
        BudgetOutcome::MaxGap(first_gap) => {
            // Gray zone: resample once with a derived seed.
            let retry = OracleOptions {
                seed: opts.seed.wrapping_add(0x9E37_79B9_7F4A_7C15),
                ..opts.clone()
            };
            match run_budget(&kernel, arch, activation, alpha, beta, &retry)? {
                BudgetOutcome::Separated(v) => Ok(v),
                BudgetOutcome::MaxGap(gap) if gap.max(first_gap) <= opts.tol_id => {
                    Ok(OracleVerdict::LikelyIdentified { max_gap: gap.max(first_gap) })
                }
                BudgetOutcome::MaxGap(gap) => Err(EmpiricalError::GrayZone {
                    max_gap: gap.max(first_gap),
                    tol_id: opts.tol_id,
                    tol_sep: opts.tol_sep,
                }),
            }
        }
    }
}

enum BudgetOutcome {
    Separated(OracleVerdict),
    MaxGap(f64),
}

fn run_budget(
    kernel: &ArchKernel,
    arch: &Architecture,
    activation: ActivationKind,
    alpha: &[f64],
    beta: &[f64],
    opts: &OracleOptions,
) -> Result<BudgetOutcome, EmpiricalError> {
    let mut max_gap = 0.0f64;
    let mut discarded = 0usize;
    let mut total = 0usize;
    for (scale_idx, &scale) in opts.scales.iter().enumerate() {
        for sample in 0..opts.samples {
            total += 1;
            let sample_seed = opts
                .seed
                .wrapping_mul(0x0100_0000_01b3)
                .wrapping_add((scale_idx as u64) << 32 | sample as u64);
            let net = sample_network(arch, activation, sample_seed).scaled(scale);
            let (out_a, out_b) = match (
                kernel.evaluate(&net, alpha)?,
                kernel.evaluate(&net, beta)?,
            ) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    discarded += 1;
                    continue;
                }
            };
            let gap = out_a
                .iter()
                .zip(&out_b)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            if !gap.is_finite() {
                discarded += 1;
                continue;
            }
            if gap > opts.tol_sep {
                return Ok(BudgetOutcome::Separated(OracleVerdict::Separated {
                    witness_seed: sample_seed,
                    gap,
                }));
            }
            max_gap = max_gap.max(gap);
        }
    }
    if discarded * 2 > total {
        return Err(EmpiricalError::Unreliable { discarded, total });
    }
    Ok(BudgetOutcome::MaxGap(max_gap))
}
