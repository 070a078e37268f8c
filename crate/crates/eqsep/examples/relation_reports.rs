//! Building an architecture from a JSON config and exporting its relation
//! the way the CLI does: members as RREF constraint rows with "p/q" entries,
//! plus digest and engine statistics.
//!
//! Run with: `cargo run --example relation_reports`

use eqsep::config::ArchitectureConfig;
use eqsep::report::relation_to_json;
use eqsep::separation::{rho, EngineLimits};

const CONFIG: &str = r#"{
    "group": "cyclic(2)",
    "activation": "relu",
    "layers": [
        {"source": "regular", "target": "regular", "generators": "full", "bias": "orbit"},
        {"source": "regular", "target": "cosets(full)", "generators": "full", "bias": "orbit"}
    ]
}"#;

fn main() {
    let config = ArchitectureConfig::from_json(CONFIG).unwrap();
    let arch = config.build().unwrap();
    println!(
        "architecture: depth {}, input dim {}, digest {}…",
        arch.depth(),
        arch.input_rep().dim(),
        &arch.digest()[..16]
    );

    let rel = rho(&arch, &EngineLimits::default()).unwrap();
    println!();
    println!("relation export:");
    println!(
        "{}",
        serde_json::to_string_pretty(&relation_to_json(&rel)).unwrap()
    );
    println!();
    println!("Each member is a list of constraint rows; a pair (α, β) is");
    println!("identified iff it satisfies every row of some member.");
}
