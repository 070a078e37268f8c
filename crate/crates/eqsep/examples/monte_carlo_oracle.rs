//! Cross-validating the symbolic engine with floating-point networks: for
//! pairs the exact relation identifies, no sampled network may separate
//! them; for separated pairs, a random network almost surely witnesses the
//! separation. Non-polynomial activations are interchangeable.
//!
//! Run with: `cargo run --example monte_carlo_oracle`

use eqsep::empirical::{mc_separation, ActivationKind, OracleOptions, OracleVerdict};
use eqsep::exactlin::rat;
use eqsep::separation::{cnn_arch, identifies, rho, EngineLimits};

fn main() {
    let arch = cnn_arch(3, 3, "relu").unwrap();
    let rel = rho(&arch, &EngineLimits::default()).unwrap();
    println!(
        "full-filter CNN on Z_3: ρ has {} members (the rotation graphs)",
        rel.relation.member_count()
    );
    println!();

    let opts = OracleOptions {
        samples: 500,
        seed: 42,
        ..OracleOptions::default()
    };
    let pairs: [(&str, [f64; 3], [f64; 3], [i64; 3], [i64; 3]); 3] = [
        ("cyclic shift", [1., 2., 3.], [2., 3., 1.], [1, 2, 3], [2, 3, 1]),
        ("reflection", [1., 2., 3.], [1., 3., 2.], [1, 2, 3], [1, 3, 2]),
        ("equal pair", [5., -1., 0.], [5., -1., 0.], [5, -1, 0], [5, -1, 0]),
    ];

    for (label, alpha_f, beta_f, alpha_q, beta_q) in pairs {
        let alpha_exact: Vec<_> = alpha_q.iter().map(|&x| rat(x)).collect();
        let beta_exact: Vec<_> = beta_q.iter().map(|&x| rat(x)).collect();
        let symbolic = identifies(&rel, &alpha_exact, &beta_exact).unwrap();
        println!("{label}: symbolically identified = {symbolic}");
        for activation in [ActivationKind::ReLU, ActivationKind::Tanh] {
            let verdict = mc_separation(&arch, activation, &alpha_f, &beta_f, &opts).unwrap();
            match verdict {
                OracleVerdict::Separated { gap, witness_seed } => println!(
                    "  {:7}: separated (gap {gap:.3e}, witness seed {witness_seed})",
                    activation.name()
                ),
                OracleVerdict::LikelyIdentified { max_gap } => println!(
                    "  {:7}: likely identified (max gap {max_gap:.3e})",
                    activation.name()
                ),
            }
        }
    }
}
