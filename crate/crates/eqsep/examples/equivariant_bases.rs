//! Bases of equivariant linear maps, two ways: the commutant solver (kernel
//! of the stacked commutation constraints) and the double-coset construction
//! for maps between coset representations. Their spans must agree wherever
//! both apply — each is the other's oracle.
//!
//! Run with: `cargo run --example equivariant_bases`

use eqsep::equivariant::{commutant_basis, double_coset_basis, invariant_basis, PermRep};
use eqsep::groups::{all_subgroups, Group};

fn main() {
    // Circulants: the commutant of the regular representation of Z_n has
    // dimension n.
    for n in [3usize, 4, 5] {
        let g = Group::cyclic(n);
        let reg = PermRep::regular(&g);
        let basis = commutant_basis(&reg, &reg).unwrap();
        println!("Z_{n} regular commutant: {} generators", basis.count());
    }

    // The classic IGN count: S_n acting on [n]², equivariant maps to itself.
    for n in [3usize, 4, 5] {
        let g = Group::symmetric(n);
        let pairs = PermRep::power(&g, 2).unwrap();
        let basis = commutant_basis(&pairs, &pairs).unwrap();
        println!(
            "S_{n} on [{n}]² -> [{n}]²: {} generators (15 once n > 3)",
            basis.count()
        );
    }

    // Invariant vectors = one indicator per orbit.
    let g = Group::symmetric(3);
    let pairs = PermRep::power(&g, 2).unwrap();
    let inv = invariant_basis(&pairs);
    println!(
        "S_3 on [3]²: {} orbits, so {} invariant indicator vectors",
        pairs.orbits().len(),
        inv.len()
    );

    // Double-coset generators against the commutant solver, across every
    // subgroup pair of S_3.
    println!();
    println!("double-coset basis vs commutant basis on S_3 coset representations:");
    for k in all_subgroups(&g).unwrap() {
        for h in all_subgroups(&g).unwrap() {
            let dc = double_coset_basis(&k, &h).unwrap();
            let cm = commutant_basis(dc.source(), dc.target()).unwrap();
            println!(
                "  |K|={} |H|={}: {} generators, spans equal: {}",
                k.order(),
                h.order(),
                dc.count(),
                dc.span_equals(&cm)
            );
        }
    }
}
