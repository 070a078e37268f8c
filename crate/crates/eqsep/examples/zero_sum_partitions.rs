//! The combinatorial core of the zero-locus recursion: given a coefficient
//! vector and a base partition, enumerate the finest partitions refining the
//! base whose every block has coefficient sum zero.
//!
//! Coarser zero-sum partitions are redundant (their solution sets are
//! contained in a finer one's), so only the minimal family is produced:
//! partitions into "atomic" blocks with no proper zero-sum subset.
//!
//! Run with: `cargo run --example zero_sum_partitions`

use eqsep::exactlin::rat;
use eqsep::partitions::{all_partitions, zero_sum_partitions, SetPartition};

fn show(coeffs: &[i64], base: &SetPartition) {
    let rationals: Vec<_> = coeffs.iter().map(|&c| rat(c)).collect();
    let family = zero_sum_partitions(&rationals, base).unwrap();
    println!("coeffs {coeffs:?}, base {base:?}");
    if family.is_empty() {
        println!("  Ψ is empty: no refinement has all-zero block sums");
    } else {
        for q in &family {
            println!("  {q:?}");
        }
    }
    println!();
}

fn main() {
    // One forced pairing: 1 with −1, 2 with −2.
    show(&[1, -1, 2, -2], &SetPartition::one_block(4));

    // Balanced ±1: every matching of positives against negatives.
    show(&[1, 1, -1, -1], &SetPartition::one_block(4));

    // An atomic block of size three: {1, 1, −2} has zero sum but no proper
    // zero-sum subset.
    show(&[1, 1, -2], &SetPartition::one_block(3));

    // Zero coefficients become forced singletons.
    show(&[0, 3, -3, 0], &SetPartition::one_block(4));

    // No solution at all.
    show(&[1, 2], &SetPartition::one_block(2));

    // The base partition factorizes the search: pairings may not cross its
    // blocks.
    let base = SetPartition::new(4, vec![vec![0, 3], vec![1, 2]]).unwrap();
    show(&[1, 1, -1, -1], &base);

    // Scale of the pruning: over 6 points with all partitions materialized,
    // versus the minimal zero-sum family.
    let coeffs = [1i64, -1, 1, -1, 1, -1];
    let rationals: Vec<_> = coeffs.iter().map(|&c| rat(c)).collect();
    let base = SetPartition::one_block(6);
    let total = all_partitions(6).unwrap().count();
    let minimal = zero_sum_partitions(&rationals, &base).unwrap();
    println!(
        "for {coeffs:?}: {} partitions of a 6-set in total, {} minimal zero-sum ones",
        total,
        minimal.len()
    );
}
