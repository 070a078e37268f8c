//! Hidden feature width has no effect on separation power: replacing a
//! hidden representation V by V ⊗ R^f leaves the relation unchanged, and
//! splitting V = V' ⊕ V'' factors the relation as an intersection.
//!
//! Run with: `cargo run --example width_multiplicity`

use eqsep::equivariant::PermRep;
use eqsep::groups::{Group, Subgroup};
use eqsep::separation::{
    shallow_regular_arch, verify_split_invariance, verify_width_invariance, EngineLimits,
};

fn main() {
    let limits = EngineLimits::default();
    let group = Group::cyclic(3);
    let arch = shallow_regular_arch(&group, &Subgroup::full(&group), "relu").unwrap();

    println!("base architecture: N(R^G, R^G, R^(G/G)) over Z_3");
    for f in 1..=4usize {
        let unchanged = verify_width_invariance(&arch, 0, f, &limits).unwrap();
        println!("  hidden R^G ⊗ R^{f}: relation unchanged = {unchanged}");
    }

    let regular = PermRep::regular(&group);
    let split = verify_split_invariance(&arch, 0, &regular, &regular, &limits).unwrap();
    println!("  split law ρ(R^G ⊕ R^G) = ρ(R^G) ∩ ρ(R^G): {split}");

    // A genuinely mixed split: R^G ⊕ R^{G/G}. Adding an invariant block to
    // the hidden representation changes nothing, since the trivial factor
    // identifies everything with equal coordinate sums and the regular
    // factor is already finer.
    let trivial_rep = PermRep::trivial(&group);
    let mixed = verify_split_invariance(&arch, 0, &regular, &trivial_rep, &limits).unwrap();
    println!("  split law ρ(R^G ⊕ R) = ρ(R^G) ∩ ρ(R): {mixed}");
}
