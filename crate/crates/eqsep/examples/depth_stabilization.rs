//! Depth improves separation power only up to a threshold. With regular
//! hidden representations the threshold is one: repeating the hidden layer
//! never changes the relation.
//!
//! Run with: `cargo run --example depth_stabilization`

use eqsep::groups::{Group, Subgroup};
use eqsep::separation::{
    depth_stabilization_threshold, shallow_regular_arch, EngineLimits,
};

fn main() {
    let limits = EngineLimits::default();
    for (gname, group) in [("Z_2", Group::cyclic(2)), ("Z_3", Group::cyclic(3))] {
        for (hname, h) in [
            ("trivial", Subgroup::trivial(&group)),
            ("full", Subgroup::full(&group)),
        ] {
            let arch = shallow_regular_arch(&group, &h, "relu").unwrap();
            let outcome = depth_stabilization_threshold(&arch, 0, 4, &limits).unwrap();
            println!(
                "{gname}, H = {hname}: member counts along the repetition chain: {:?}",
                outcome
                    .relations
                    .iter()
                    .map(|r| r.relation.member_count())
                    .collect::<Vec<_>>()
            );
            println!(
                "  monotone nonincreasing: {}; stabilizes after {:?} repetition(s)",
                outcome.monotone, outcome.threshold
            );
        }
    }
    println!();
    println!("The probed threshold is empirical: it certifies equality on the");
    println!("probed range, not a universal bound for deeper repetitions.");
}
