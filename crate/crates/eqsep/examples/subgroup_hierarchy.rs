//! Transitive hidden representations form a separation hierarchy mirroring
//! the subgroup lattice: for K < H < G, a hidden R^{G/K} separates at least
//! as much as R^{G/H}. The regular representation (K = {e}) sits at the top,
//! the trivial representation (H = G) at the bottom.
//!
//! Run with: `cargo run --example subgroup_hierarchy`

use eqsep::equivariant::PermRep;
use eqsep::groups::{all_subgroups, Group};
use eqsep::separation::{compare, rho, shallow_hidden_arch, EngineLimits};

fn main() {
    let limits = EngineLimits::default();
    let group = Group::symmetric(3);
    let source = PermRep::regular(&group);
    let target = PermRep::trivial(&group);

    // Every subgroup of S_3, with the relation of hidden R^{G/H}.
    let mut rows = Vec::new();
    for h in all_subgroups(&group).unwrap() {
        let hidden = PermRep::from_cosets(&group, &h).unwrap();
        let arch = shallow_hidden_arch(&source, &hidden, &target, "relu").unwrap();
        let rel = rho(&arch, &limits).unwrap();
        println!(
            "|H| = {}: hidden R^(G/H) has dim {}, ρ has {} member(s)",
            h.order(),
            hidden.dim(),
            rel.relation.member_count()
        );
        rows.push((h, rel));
    }

    println!();
    println!("pairwise comparisons along nested subgroups (K < H ⇒ ρ_K ⊆ ρ_H):");
    for (k, rel_k) in &rows {
        for (h, rel_h) in &rows {
            if k.order() < h.order() && k.is_subgroup_of(h) {
                let c = compare(&rel_k.relation, &rel_h.relation).unwrap();
                println!("  |K| = {} inside |H| = {}: {c}", k.order(), h.order());
            }
        }
    }
}
