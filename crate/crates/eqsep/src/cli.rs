//! Command-line drivers: architecture configs in, reports out.
//!
//! Exit codes: `0` success, `1` a checked property is false, `2` input
//! error, `3` resource limit hit.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{parse_float_vector, parse_rational_vector, ArchitectureConfig, ConfigError,
    GroupSpec, RepSpec};
use crate::empirical::{mc_separation, ActivationKind, EmpiricalError, OracleOptions,
    OracleVerdict};
use crate::equivariant::{commutant_basis, double_coset_basis, Architecture};
use crate::report::{digest_value, relation_to_json, Report};
use crate::separation::{
    compare, depth_stabilization_threshold, identifies, rho, Comparison, EngineLimits,
    SeparationError,
};
use crate::suites::run_suites;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "eqsep",
    version,
    about = "Exact separation-power analysis for equivariant neural networks"
)]
pub struct Cli {
    /// Worker threads for the parallel union operations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on intermediate subspace-union members.
    #[arg(long, global = true)]
    pub max_union_members: Option<usize>,
    /// Cap on the largest bias-partition block handed to the zero-sum
    /// enumerator.
    #[arg(long, global = true)]
    pub max_block_size: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpectRelation {
    Equal,
    Subset,
    Superset,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the identification relation of an architecture.
    Rho { config: PathBuf },
    /// Ask whether the architecture identifies an exact rational pair.
    Identify {
        config: PathBuf,
        /// Comma-separated rationals, e.g. "1,1/2,-3".
        alpha: String,
        beta: String,
    },
    /// Compare the relations of two architectures.
    Compare {
        config_a: PathBuf,
        config_b: PathBuf,
        /// Fail (exit 1) unless the comparison matches.
        #[arg(long, value_enum)]
        expect: Option<ExpectRelation>,
    },
    /// Probe the repetition threshold of a square layer.
    Stabilize {
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        layer: usize,
        #[arg(long, default_value_t = 3)]
        max_reps: usize,
    },
    /// Run a verification suite:
    /// activations|depth|width|hierarchy|cnn|regular|all.
    Verify { suite: String },
    /// Monte Carlo cross-check of a float pair under sampled networks.
    Empirical {
        config: PathBuf,
        /// Comma-separated floats.
        alpha: String,
        beta: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol_sep: f64,
        #[arg(long, default_value_t = 1e-7)]
        tol_id: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficient scale ladder.
        #[arg(long, default_value = "0.1,1,10")]
        scales: String,
    },
    /// Print an equivariant basis between two representations.
    Basis {
        #[arg(long)]
        group: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// "commutant" or "double_coset".
        #[arg(long, default_value = "commutant")]
        method: String,
    },
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    if let Some(threads) = cli.threads {
        // Best effort: a pool may already exist in-process (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(cli) {
        Ok((report, code)) => {
            let rendered = match cli.format {
                OutputFormat::Json => report.to_json_pretty(),
                OutputFormat::Text => render_text(&report),
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_INPUT_ERROR;
                    }
                }
                None => print!("{rendered}"),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error(transparent)]
    Empirical(#[from] EmpiricalError),
}

fn exit_code_for(e: &CliError) -> i32 {
    match e {
        CliError::Config(_) => EXIT_INPUT_ERROR,
        CliError::Separation(SeparationError::Resource { .. }) => EXIT_RESOURCE,
        CliError::Separation(_) => EXIT_INPUT_ERROR,
        CliError::Empirical(EmpiricalError::Unreliable { .. })
        | CliError::Empirical(EmpiricalError::GrayZone { .. }) => EXIT_RESOURCE,
        CliError::Empirical(_) => EXIT_INPUT_ERROR,
    }
}

fn effective_limits(cli: &Cli, config: Option<&ArchitectureConfig>) -> EngineLimits {
    let mut limits = EngineLimits::default();
    if let Some(c) = config {
        c.limits.merge_into(&mut limits);
    }
    if let Some(m) = cli.max_union_members {
        limits.max_union_members = m;
    }
    if let Some(b) = cli.max_block_size {
        limits.max_block_size = b;
    }
    limits
}

fn load(path: &Path) -> Result<(ArchitectureConfig, Architecture), CliError> {
    let config = ArchitectureConfig::from_file(path)?;
    let arch = config.build()?;
    Ok((config, arch))
}

fn dispatch(cli: &Cli) -> Result<(Report, i32), CliError> {
    let started = std::time::Instant::now();
    let (report, code) = match &cli.command {
        Command::Rho { config } => {
            let (cfg, arch) = load(config)?;
            let limits = effective_limits(cli, Some(&cfg));
            let rel = rho(&arch, &limits)?;
            let report = Report::new("rho", arch.digest(), relation_to_json(&rel)).with_stats(
                json!({
                    "nodes": rel.stats.nodes,
                    "memo_hits": rel.stats.memo_hits,
                    "memo_entries": rel.stats.memo_entries,
                }),
            );
            (report, EXIT_OK)
        }
        Command::Identify {
            config,
            alpha,
            beta,
        } => {
            let (cfg, arch) = load(config)?;
            let limits = effective_limits(cli, Some(&cfg));
            let a = parse_rational_vector(alpha)?;
            let b = parse_rational_vector(beta)?;
            let rel = rho(&arch, &limits)?;
            let identified = identifies(&rel, &a, &b)?;
            let report = Report::new(
                "identify",
                arch.digest(),
                json!({
                    "alpha": alpha,
                    "beta": beta,
                    "identified": identified,
                }),
            );
            (report, EXIT_OK)
        }
        Command::Compare {
            config_a,
            config_b,
            expect,
        } => {
            let (cfg_a, arch_a) = load(config_a)?;
            let (cfg_b, arch_b) = load(config_b)?;
            let limits_a = effective_limits(cli, Some(&cfg_a));
            let limits_b = effective_limits(cli, Some(&cfg_b));
            let rel_a = rho(&arch_a, &limits_a)?;
            let rel_b = rho(&arch_b, &limits_b)?;
            let verdict = compare(&rel_a.relation, &rel_b.relation)?;
            let matches_expectation = expect.map(|e| {
                matches!(
                    (e, verdict),
                    (ExpectRelation::Equal, Comparison::Equal)
                        | (ExpectRelation::Subset, Comparison::StrictSubset)
                        | (ExpectRelation::Subset, Comparison::Equal)
                        | (ExpectRelation::Superset, Comparison::StrictSuperset)
                        | (ExpectRelation::Superset, Comparison::Equal)
                )
            });
            let digest = digest_value(&json!([arch_a.digest(), arch_b.digest()]));
            let report = Report::new(
                "compare",
                digest,
                json!({
                    "comparison": verdict.to_string(),
                    "left_members": rel_a.relation.member_count(),
                    "right_members": rel_b.relation.member_count(),
                    "expectation_met": matches_expectation,
                }),
            );
            let code = match matches_expectation {
                Some(false) => EXIT_PROPERTY_FAILED,
                _ => EXIT_OK,
            };
            (report, code)
        }
        Command::Stabilize {
            config,
            layer,
            max_reps,
        } => {
            let (cfg, arch) = load(config)?;
            let limits = effective_limits(cli, Some(&cfg));
            let outcome = depth_stabilization_threshold(&arch, *layer, *max_reps, &limits)?;
            let report = Report::new(
                "stabilize",
                arch.digest(),
                json!({
                    "layer": layer,
                    "max_reps": max_reps,
                    "threshold": outcome.threshold,
                    "monotone": outcome.monotone,
                    "member_counts": outcome
                        .relations
                        .iter()
                        .map(|r| r.relation.member_count())
                        .collect::<Vec<_>>(),
                }),
            );
            // Not stabilizing within the probed range is a reported outcome,
            // not a failed property; a broken monotone chain is a failure.
            let code = if outcome.monotone {
                EXIT_OK
            } else {
                EXIT_PROPERTY_FAILED
            };
            (report, code)
        }
        Command::Verify { suite } => {
            let limits = effective_limits(cli, None);
            let reports = run_suites(suite, &limits)?;
            let all_passed = reports.iter().all(SuiteReport::passed);
            let first_failure = reports.iter().find_map(|r| {
                r.first_failure()
                    .map(|c| json!({"suite": r.suite, "check": c.name, "detail": c.detail}))
            });
            let payload = json!({
                "suites": reports.iter().map(|r| json!({
                    "suite": r.suite,
                    "passed": r.passed(),
                    "checks": r.checks.iter().map(|c| json!({
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "all_passed": all_passed,
                "first_failure": first_failure,
            });
            let report = Report::new("verify", digest_value(&json!(suite)), payload);
            let code = if all_passed {
                EXIT_OK
            } else {
                EXIT_PROPERTY_FAILED
            };
            (report, code)
        }
        Command::Empirical {
            config,
            alpha,
            beta,
            samples,
            tol_sep,
            tol_id,
            seed,
            scales,
        } => {
            let (_, arch) = load(config)?;
            let a = parse_float_vector(alpha)?;
            let b = parse_float_vector(beta)?;
            let scales = parse_float_vector(scales)?;
            let activation = ActivationKind::parse(arch.activation_tag())
                .map_err(CliError::Empirical)?;
            let opts = OracleOptions {
                samples: *samples,
                tol_sep: *tol_sep,
                tol_id: *tol_id,
                seed: *seed,
                scales,
            };
            let verdict = mc_separation(&arch, activation, &a, &b, &opts)?;
            let digest = digest_value(&json!([
                arch.digest(),
                alpha,
                beta,
                samples,
                tol_sep.to_string(),
                tol_id.to_string(),
                seed
            ]));
            let payload = match &verdict {
                OracleVerdict::Separated { witness_seed, gap } => json!({
                    "verdict": "separated",
                    "witness_seed": witness_seed,
                    "gap": gap,
                }),
                OracleVerdict::LikelyIdentified { max_gap } => json!({
                    "verdict": "likely-identified",
                    "max_gap": max_gap,
                }),
            };
            (Report::new("empirical", digest, payload), EXIT_OK)
        }
        Command::Basis {
            group,
            source,
            target,
            method,
        } => {
            let g = GroupSpec::parse(group)?.build()?;
            let source_spec = RepSpec::parse(source)?;
            let target_spec = RepSpec::parse(target)?;
            let v = source_spec.build(&g, "source")?;
            let w = target_spec.build(&g, "target")?;
            let basis = match method.as_str() {
                "commutant" => commutant_basis(&v, &w).map_err(SeparationError::from)?,
                "double_coset" => {
                    let extract = |spec: &RepSpec, field: &str| {
                        spec_subgroup(spec).ok_or_else(|| {
                            ConfigError::Field {
                                field: field.into(),
                                message: "double_coset needs regular or cosets(…) reps".into(),
                            }
                        })
                    };
                    let k = extract(&source_spec, "source")?.build(&g, "source")?;
                    let h = extract(&target_spec, "target")?.build(&g, "target")?;
                    double_coset_basis(&k, &h).map_err(SeparationError::from)?
                }
                other => {
                    return Err(ConfigError::Field {
                        field: "method".into(),
                        message: format!("unknown method {other:?}"),
                    }
                    .into())
                }
            };
            let matrices: Vec<Vec<Vec<String>>> = basis
                .generators()
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|r| m.row(r).iter().map(|e| e.to_string()).collect())
                        .collect()
                })
                .collect();
            let digest = digest_value(&json!([group, source, target, method]));
            let report = Report::new(
                "basis",
                digest,
                json!({
                    "method": method,
                    "count": basis.count(),
                    "source_dim": v.dim(),
                    "target_dim": w.dim(),
                    "generators": matrices,
                }),
            );
            (report, EXIT_OK)
        }
    };
    Ok((report.with_timing(started.elapsed().as_millis()), code))
}

fn spec_subgroup(spec: &RepSpec) -> Option<crate::config::SubgroupSpec> {
    match spec {
        RepSpec::Regular => Some(crate::config::SubgroupSpec::Trivial),
        RepSpec::Cosets(sub) => Some(sub.clone()),
        _ => None,
    }
}

use crate::suites::SuiteReport;

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    out.push_str(&format!("inputs digest: {}\n", report.inputs_digest));
    render_value(&report.result, 0, &mut out);
    out
}

fn render_value(value: &serde_json::Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                match v {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(v, indent + 1, out);
                    }
                    other => out.push_str(&format!("{pad}{k}: {other}\n")),
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, indent + 1, out);
                    }
                    other => out.push_str(&format!("{pad}- {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}
