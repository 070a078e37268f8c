//! The separation power of a shallow circular CNN depends on the filter
//! size: ρ(n-CNN) ⊊ ρ(1-CNN), with a monotone chain in between.
//!
//! A size-1 filter sees inputs only up to an arbitrary coordinate
//! permutation, while the full filter pins them down to cyclic shifts.
//!
//! Run with: `cargo run --example cnn_filter_hierarchy`

use eqsep::separation::{cnn_arch, compare, permutation_relation, rho, EngineLimits};

fn main() {
    let n = 4;
    let limits = EngineLimits::default();

    let mut relations = Vec::new();
    for k in 1..=n {
        let rel = rho(&cnn_arch(n, k, "relu").unwrap(), &limits).unwrap();
        println!(
            "ρ({k}-CNN) on Z_{n}: {} member(s), dims {:?}",
            rel.relation.member_count(),
            rel.relation.members().iter().map(|m| m.dim()).collect::<Vec<_>>()
        );
        relations.push(rel);
    }

    println!();
    for k in 2..=n {
        let c = compare(&relations[k - 1].relation, &relations[k - 2].relation).unwrap();
        println!("compare(ρ({k}-CNN), ρ({}-CNN)) = {c}", k - 1);
    }
    let ends = compare(&relations[n - 1].relation, &relations[0].relation).unwrap();
    println!("compare(ρ({n}-CNN), ρ(1-CNN)) = {ends}");

    // The size-1 relation is exactly "equal up to some permutation".
    let perm = permutation_relation(n).unwrap();
    println!(
        "ρ(1-CNN) = permutation relation on {n} points: {}",
        relations[0].relation.eq_as_sets(&perm).unwrap()
    );
}
