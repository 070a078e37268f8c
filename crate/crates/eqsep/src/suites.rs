//! Verification suites: each suite checks one separation-power law on its
//! canonical small instances, exactly where possible and via the Monte Carlo
//! oracle where the law is about floating-point agreement. The CLI `verify`
//! command and the acceptance test suite both run these.

use std::sync::Arc;

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::empirical::{mc_separation, ActivationKind, OracleOptions};
use crate::equivariant::PermRep;
use crate::exactlin::{rat, Rational};
use crate::groups::{Group, Subgroup};
use crate::separation::{
    cnn_arch, compare, depth_stabilization_threshold, h_orbit_relation, permutation_relation,
    rho, shallow_regular_arch, verify_split_invariance, verify_subgroup_hierarchy,
    verify_width_invariance, Comparison, EngineLimits, IdentificationRelation, SeparationError,
};

pub const SUITE_NAMES: &[&str] = &[
    "activations",
    "depth",
    "width",
    "hierarchy",
    "cnn",
    "regular",
];

/// One named check with its outcome.
#[derive(Debug, Clone)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// All checks of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(SuiteCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run_suites(name: &str, limits: &EngineLimits) -> Result<Vec<SuiteReport>, SeparationError> {
    match name {
        "all" => SUITE_NAMES
            .iter()
            .map(|n| run_one(n, limits))
            .collect::<Result<Vec<_>, _>>(),
        other => Ok(vec![run_one(other, limits)?]),
    }
}

fn run_one(name: &str, limits: &EngineLimits) -> Result<SuiteReport, SeparationError> {
    match name {
        "regular" => suite_regular(limits),
        "cnn" => suite_cnn(limits),
        "depth" => suite_depth(limits),
        "width" => suite_width(limits),
        "hierarchy" => suite_hierarchy(limits),
        "activations" => suite_activations(limits, &OracleOptions::default()),
        other => Err(SeparationError::InvalidQuery(format!(
            "unknown suite {other:?}; expected one of {SUITE_NAMES:?} or \"all\""
        ))),
    }
}

/// The `(G, H)` instances of the regular-representation orbit law.
pub fn regular_law_instances() -> Vec<(String, Arc<Group>, Subgroup)> {
    let mut out = Vec::new();
    for (gname, group) in [
        ("Z2", Group::cyclic(2)),
        ("Z3", Group::cyclic(3)),
        ("S3", Group::symmetric(3)),
    ] {
        out.push((
            format!("{gname}/H=trivial"),
            Arc::clone(&group),
            Subgroup::trivial(&group),
        ));
        if gname == "S3" {
            out.push((
                format!("{gname}/H=A3"),
                Arc::clone(&group),
                Subgroup::alternating(&group),
            ));
        }
        out.push((
            format!("{gname}/H=full"),
            Arc::clone(&group),
            Subgroup::full(&group),
        ));
    }
    out
}

/// Orbit law: `ρ(N(R^G, R^G, R^{G/H}))` equals the `H`-orbit relation
/// exactly, for every instance group and subgroup.
pub fn suite_regular(limits: &EngineLimits) -> Result<SuiteReport, SeparationError> {
    let mut report = SuiteReport {
        suite: "regular".into(),
        checks: Vec::new(),
    };
    for (label, group, h) in regular_law_instances() {
        let arch = shallow_regular_arch(&group, &h, "relu")?;
        let rel = rho(&arch, limits)?;
        let expected = h_orbit_relation(&h, &PermRep::regular(&group))?;
        let eq = rel.relation.eq_as_sets(&expected)?;
        report.push(
            format!("orbit-law {label}"),
            eq,
            format!(
                "computed {} members, expected {} (nodes {}, memo hits {})",
                rel.relation.member_count(),
                expected.member_count(),
                rel.stats.nodes,
                rel.stats.memo_hits
            ),
        );
    }
    Ok(report)
}

/// Filter hierarchy of circular CNNs on `Z_3`: the full-filter relation is a
/// strict subset of the size-1 relation, the chain over filter sizes is
/// monotone, and the size-1 relation is exactly the permutation relation.
pub fn suite_cnn(limits: &EngineLimits) -> Result<SuiteReport, SeparationError> {
    let mut report = SuiteReport {
        suite: "cnn".into(),
        checks: Vec::new(),
    };
    let n = 3;
    let mut relations = Vec::new();
    for k in 1..=n {
        let rel = rho(&cnn_arch(n, k, "relu")?, limits)?;
        relations.push(rel);
    }
    let c = compare(&relations[n - 1].relation, &relations[0].relation)?;
    report.push(
        "3-CNN strictly below 1-CNN",
        c == Comparison::StrictSubset,
        format!("compare(ρ(3-CNN), ρ(1-CNN)) = {c}"),
    );
    for k in (2..=n).rev() {
        let ok = relations[k - 1].relation.is_subset(&relations[k - 2].relation)?;
        report.push(
            format!("ρ({k}-CNN) ⊆ ρ({}-CNN)", k - 1),
            ok,
            format!(
                "{} members vs {}",
                relations[k - 1].relation.member_count(),
                relations[k - 2].relation.member_count()
            ),
        );
    }
    let perm = permutation_relation(n)?;
    report.push(
        "1-CNN equals the permutation relation",
        relations[0].relation.eq_as_sets(&perm)?,
        format!(
            "{} members vs {}",
            relations[0].relation.member_count(),
            perm.member_count()
        ),
    );
    Ok(report)
}

/// Depth stabilization with regular hidden layers on `Z_3`: threshold 1 and
/// a monotone repetition chain up to three repetitions.
pub fn suite_depth(limits: &EngineLimits) -> Result<SuiteReport, SeparationError> {
    let mut report = SuiteReport {
        suite: "depth".into(),
        checks: Vec::new(),
    };
    let group = Group::cyclic(3);
    for (hname, h) in [
        ("full", Subgroup::full(&group)),
        ("trivial", Subgroup::trivial(&group)),
    ] {
        let arch = shallow_regular_arch(&group, &h, "relu")?;
        let outcome = depth_stabilization_threshold(&arch, 0, 3, limits)?;
        report.push(
            format!("Z3 H={hname}: chain monotone"),
            outcome.monotone,
            format!(
                "member counts {:?}",
                outcome
                    .relations
                    .iter()
                    .map(|r| r.relation.member_count())
                    .collect::<Vec<_>>()
            ),
        );
        report.push(
            format!("Z3 H={hname}: threshold is 1"),
            outcome.threshold == Some(1),
            format!("threshold {:?}", outcome.threshold),
        );
    }
    Ok(report)
}

/// Width and multiplicity invariance on `Z_3`: `R^G ⊗ R^f` gives the same
/// relation for `f ∈ {1, 2, 3}`, and the split law holds for
/// `R^G ⊕ R^G`.
pub fn suite_width(limits: &EngineLimits) -> Result<SuiteReport, SeparationError> {
    let mut report = SuiteReport {
        suite: "width".into(),
        checks: Vec::new(),
    };
    let group = Group::cyclic(3);
    let arch = shallow_regular_arch(&group, &Subgroup::full(&group), "relu")?;
    for f in 1..=3usize {
        let ok = verify_width_invariance(&arch, 0, f, limits)?;
        report.push(
            format!("multiplicity f={f} leaves relation unchanged"),
            ok,
            String::new(),
        );
    }
    let regular = PermRep::regular(&group);
    let split = verify_split_invariance(&arch, 0, &regular, &regular, limits)?;
    report.push(
        "split law ρ(V'⊕V'') = ρ(V') ∩ ρ(V'')",
        split,
        "V' = V'' = regular",
    );
    Ok(report)
}

/// Subgroup hierarchy on `S_3`: relations of hidden `R^{G/K}` grow with `K`
/// along the chain `{e} < A_3 < S_3`.
pub fn suite_hierarchy(limits: &EngineLimits) -> Result<SuiteReport, SeparationError> {
    let mut report = SuiteReport {
        suite: "hierarchy".into(),
        checks: Vec::new(),
    };
    let group = Group::symmetric(3);
    let source = PermRep::regular(&group);
    let target = PermRep::trivial(&group);
    let trivial = Subgroup::trivial(&group);
    let a3 = Subgroup::alternating(&group);
    let full = Subgroup::full(&group);
    for (label, k, h) in [
        ("{e} <= A3", &trivial, &a3),
        ("A3 <= S3", &a3, &full),
        ("{e} <= S3", &trivial, &full),
        ("A3 <= A3", &a3, &a3),
    ] {
        let ok = verify_subgroup_hierarchy(k, h, &source, &target, limits)?;
        report.push(format!("ρ(G/K) ⊆ ρ(G/H) for {label}"), ok, String::new());
    }
    Ok(report)
}

/// A symbolically classified input pair for the oracle, with float copies.
struct OraclePair {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    identified: bool,
}

/// Draws `count` identified and `count` separated pairs per the exact
/// relation, deterministically from `seed`.
fn sample_pairs(
    rel: &IdentificationRelation,
    count: usize,
    seed: u64,
) -> Result<Vec<OraclePair>, SeparationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rel.input_dim();
    let mut pairs = Vec::with_capacity(2 * count);
    let members = rel.relation.members();
    for i in 0..count {
        // Identified: an exact rational point of some member, nonzero when
        // the member allows it.
        let member = &members[i % members.len()];
        let mut point = member.sample_point(&mut rng);
        for _ in 0..10 {
            if point.iter().any(|e| !num::Zero::is_zero(e)) || member.dim() == 0 {
                break;
            }
            point = member.sample_point(&mut rng);
        }
        let floats: Vec<f64> = point
            .iter()
            .map(|e| e.to_f64().expect("small rational"))
            .collect();
        pairs.push(OraclePair {
            alpha: floats[..n].to_vec(),
            beta: floats[n..].to_vec(),
            identified: true,
        });
    }
    let mut found = 0;
    while found < count {
        let candidate: Vec<Rational> = (0..2 * n).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if rel.relation.contains_vector(&candidate)? {
            continue;
        }
        let floats: Vec<f64> = candidate
            .iter()
            .map(|e| e.to_f64().expect("integer"))
            .collect();
        pairs.push(OraclePair {
            alpha: floats[..n].to_vec(),
            beta: floats[n..].to_vec(),
            identified: false,
        });
        found += 1;
    }
    Ok(pairs)
}

/// Symbolic/empirical agreement: on the orbit-law and CNN instances, the
/// oracle with ReLU and with tanh never separates a symbolically identified
/// pair, finds witnesses for at least 95% of separated pairs, and the two
/// activations' verdicts agree on every decided pair.
pub fn suite_activations(
    limits: &EngineLimits,
    opts: &OracleOptions,
) -> Result<SuiteReport, SeparationError> {
    let mut report = SuiteReport {
        suite: "activations".into(),
        checks: Vec::new(),
    };
    let mut instances: Vec<(String, crate::equivariant::Architecture)> = Vec::new();
    for (label, group, h) in regular_law_instances() {
        instances.push((label, shallow_regular_arch(&group, &h, "relu")?));
    }
    for k in 1..=3usize {
        instances.push((format!("Z3 {k}-CNN"), cnn_arch(3, k, "relu")?));
    }

    let pairs_per_side = 25;
    let mut separated_total = 0usize;
    let mut separated_witnessed = 0usize;
    for (label, arch) in &instances {
        let rel = rho(arch, limits)?;
        let pairs = sample_pairs(&rel, pairs_per_side, 0xE05EED)?;
        let mut false_separations = 0usize;
        let mut disagreements = 0usize;
        let mut undecided = 0usize;
        for pair in &pairs {
            let mut verdicts = Vec::new();
            for activation in [ActivationKind::ReLU, ActivationKind::Tanh] {
                match mc_separation(arch, activation, &pair.alpha, &pair.beta, opts) {
                    Ok(v) => verdicts.push(v.is_separated()),
                    Err(_) => {
                        undecided += 1;
                    }
                }
            }
            if pair.identified && verdicts.iter().any(|&s| s) {
                false_separations += 1;
            }
            if !pair.identified {
                separated_total += 1;
                if verdicts.iter().all(|&s| s) && verdicts.len() == 2 {
                    separated_witnessed += 1;
                }
            }
            if verdicts.len() == 2 && verdicts[0] != verdicts[1] {
                disagreements += 1;
            }
        }
        report.push(
            format!("{label}: no separation of identified pairs"),
            false_separations == 0,
            format!("{false_separations} false separations of {pairs_per_side}"),
        );
        report.push(
            format!("{label}: relu and tanh verdicts agree"),
            disagreements == 0,
            format!("{disagreements} disagreements, {undecided} undecided"),
        );
    }
    let rate = separated_witnessed as f64 / separated_total.max(1) as f64;
    report.push(
        "witnesses found for ≥95% of separated pairs",
        rate >= 0.95,
        format!("{separated_witnessed}/{separated_total} = {rate:.3}"),
    );
    Ok(report)
}
