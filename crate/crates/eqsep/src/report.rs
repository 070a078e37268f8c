//! Report serialization: relations, verdicts, and comparison results as
//! schema-versioned JSON.
//!
//! Reports are byte-reproducible for identical inputs, seeds, and limits,
//! except for the `timing` object, which is excluded from the determinism
//! contract and from digests. Rationals appear as `"p/q"` strings (just
//! `"p"` when the denominator is one); a subspace is its RREF constraint
//! rows; a union is its ordered member list.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::exactlin::{format_rational, Subspace, SubspaceUnion};
use crate::separation::IdentificationRelation;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Envelope for every CLI result.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub result: Value,
    pub stats: Option<Value>,
    /// Wall-clock data; the only nondeterministic part of a report.
    pub timing: Value,
}

impl Report {
    pub fn new(command: &str, inputs_digest: String, result: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs_digest,
            result,
            stats: None,
            timing: json!({}),
        }
    }

    pub fn with_stats(mut self, stats: Value) -> Self {
        self.stats = Some(stats);
        self
    }

    pub fn with_timing(mut self, wall_ms: u128) -> Self {
        let unix_ms = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        self.timing = json!({ "generated_unix_ms": unix_ms, "wall_ms": wall_ms });
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "result": self.result,
            "stats": self.stats,
            "timing": self.timing,
        })
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Hex SHA-256 of a canonical JSON value; used for the `inputs_digest`
/// field.
pub fn digest_value(value: &Value) -> String {
    let canonical = serde_json::to_string(value).expect("value serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A subspace as its constraint rows of `"p/q"` strings.
pub fn subspace_to_json(s: &Subspace) -> Value {
    let rows: Vec<Vec<String>> = (0..s.constraints().rows())
        .map(|r| s.constraints().row(r).iter().map(format_rational).collect())
        .collect();
    json!(rows)
}

/// A union as `{ambient_dim, members}` with members in canonical order.
pub fn union_to_json(u: &SubspaceUnion) -> Value {
    json!({
        "ambient_dim": u.ambient_dim(),
        "members": u.members().iter().map(subspace_to_json).collect::<Vec<_>>(),
    })
}

/// The relation export format: ambient dimension, members, digest, and the
/// deterministic engine counters.
pub fn relation_to_json(rel: &IdentificationRelation) -> Value {
    let mut v = union_to_json(&rel.relation);
    v["architecture_digest"] = json!(rel.architecture_digest);
    v["stats"] = json!({
        "nodes": rel.stats.nodes,
        "memo_hits": rel.stats.memo_hits,
        "memo_entries": rel.stats.memo_entries,
    });
    v
}
