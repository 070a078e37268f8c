//! Floating-point network sampling and Monte Carlo cross-validation of the
//! symbolic engine, plus Weisfeiler-Leman color refinement as an external
//! yardstick for the graph cases.
//!
//! The oracle never contradicts the exact engine by construction of its
//! tolerances: a pair is declared `Separated` only on a gap well above float
//! noise, `LikelyIdentified` only when every sampled gap is far below it, and
//! gaps in the gray zone in between trigger resampling instead of a verdict.

mod network;
mod oracle;
mod wl;

pub use network::{evaluate, sample_network, ActivationKind, FloatNetwork, LayerCoefficients};
pub use oracle::{mc_separation, OracleOptions, OracleVerdict};
pub use wl::{adjacency, parse_edge_list, wl_colors};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EmpiricalError {
    #[error("unknown activation {0:?} (expected relu, tanh, sigmoid, or identity)")]
    UnknownActivation(String),
    #[error("polynomial activation {0:?} is excluded from oracle verdicts")]
    PolynomialActivation(&'static str),
    #[error("input has length {got}, architecture consumes {expected}")]
    InputLength { expected: usize, got: usize },
    #[error("coefficient counts do not match the architecture (layer {layer})")]
    CoefficientMismatch { layer: usize },
    #[error("oracle unreliable: {discarded} of {total} samples discarded (NaN/overflow)")]
    Unreliable { discarded: usize, total: usize },
    #[error(
        "oracle inconclusive: max gap {max_gap:e} sits between tol_id {tol_id:e} and tol_sep {tol_sep:e} after resampling"
    )]
    GrayZone {
        max_gap: f64,
        tol_id: f64,
        tol_sep: f64,
    },
    #[error("graph has {n} nodes, limit is {limit}")]
    GraphTooLarge { n: usize, limit: usize },
    #[error("weisfeiler-leman order must be 1 or 2 (got {0})")]
    BadWlOrder(u8),
    #[error("bad edge list line {line}: {reason}")]
    BadEdgeList { line: usize, reason: String },
}
