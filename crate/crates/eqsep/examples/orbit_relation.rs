//! Shallow networks with a regular hidden representation identify exactly
//! the pairs lying in a common H-orbit.
//!
//! This example computes ρ(N(R^G, R^G, R^{G/H})) symbolically for a few
//! (G, H) choices, checks it against the independently constructed union of
//! graphs ⋃_{h∈H} graph(h), and runs some point queries.
//!
//! Run with: `cargo run --example orbit_relation`

use eqsep::equivariant::PermRep;
use eqsep::exactlin::rat;
use eqsep::groups::{Group, Subgroup};
use eqsep::separation::{
    h_orbit_relation, identifies, rho, shallow_regular_arch, EngineLimits,
};

fn main() {
    let limits = EngineLimits::default();

    for (name, group, subgroups) in [
        (
            "Z_3",
            Group::cyclic(3),
            vec![
                ("trivial", Subgroup::trivial(&Group::cyclic(3))),
                ("Z_3", Subgroup::full(&Group::cyclic(3))),
            ],
        ),
        (
            "S_3",
            Group::symmetric(3),
            vec![
                ("trivial", Subgroup::trivial(&Group::symmetric(3))),
                ("A_3", Subgroup::alternating(&Group::symmetric(3))),
                ("S_3", Subgroup::full(&Group::symmetric(3))),
            ],
        ),
    ] {
        println!("G = {name} (order {})", group.order());
        for (hname, h) in subgroups {
            let arch = shallow_regular_arch(&group, &h, "relu").unwrap();
            let rel = rho(&arch, &limits).unwrap();
            let expected = h_orbit_relation(&h, &PermRep::regular(&group)).unwrap();
            let agree = rel.relation.eq_as_sets(&expected).unwrap();
            println!(
                "  H = {hname:8} ρ has {} member(s) of the pair space; matches ⋃ graph(h): {}",
                rel.relation.member_count(),
                agree
            );
            println!(
                "           engine: {} nodes, {} memo hits, {:?}",
                rel.stats.nodes, rel.stats.memo_hits, rel.stats.wall
            );
        }
    }

    // Point queries on Z_3 with H = Z_3: rotations are identified, nothing
    // else is.
    let g = Group::cyclic(3);
    let arch = shallow_regular_arch(&g, &Subgroup::full(&g), "relu").unwrap();
    let rel = rho(&arch, &limits).unwrap();
    let v = [rat(1), rat(2), rat(3)];
    let rotated = [rat(3), rat(1), rat(2)];
    let scaled = [rat(2), rat(4), rat(6)];
    println!();
    println!(
        "identifies((1,2,3), (3,1,2)) = {}   (a rotation)",
        identifies(&rel, &v, &rotated).unwrap()
    );
    println!(
        "identifies((1,2,3), (2,4,6)) = {}  (not a rotation)",
        identifies(&rel, &v, &scaled).unwrap()
    );
}
