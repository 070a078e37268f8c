//! Property tests for the algebraic invariants: exact linear algebra laws,
//! covering soundness of union membership, completeness of the zero-sum
//! pruning at the subspace level, and the engine's invariance under a change
//! of spanning set in the final layer.

use eqsep::equivariant::PermRep;
use eqsep::exactlin::{rat, ratio, RatMatrix, Rational, Subspace, SubspaceUnion};
use eqsep::groups::{Group, Subgroup};
use eqsep::partitions::{all_partitions, zero_sum_partitions, SetPartition};
use eqsep::separation::{
    rho, shallow_hidden_arch, shallow_regular_arch, twin_transform, zero_locus, EngineLimits,
    EngineStats, MemoTable,
};
use num::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn matrix(max_rows: usize, cols: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatMatrix> {
    cols.prop_flat_map(move |c| {
        (0..=max_rows).prop_flat_map(move |r| {
            proptest::collection::vec(small_rational(), r * c)
                .prop_map(move |entries| RatMatrix::from_fn(r, c, |i, j| entries[i * c + j].clone()))
        })
    })
}

fn union(ambient: usize) -> impl Strategy<Value = SubspaceUnion> {
    proptest::collection::vec(matrix(ambient, ambient..=ambient), 1..=3).prop_map(move |mats| {
        SubspaceUnion::normalize(ambient, mats.iter().map(Subspace::nullspace).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent(m in matrix(5, 1..=6)) {
        let (once, rank_once) = m.rref();
        let (twice, rank_twice) = once.rref();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(rank_once, rank_twice);
    }

    #[test]
    fn rank_nullity(m in matrix(5, 1..=6)) {
        let rank = m.rank();
        let kernel = Subspace::nullspace(&m);
        prop_assert_eq!(kernel.dim() + rank, m.cols());
        // The cached basis really spans the kernel.
        let basis = kernel.basis();
        for r in 0..basis.rows() {
            prop_assert!(m.mul_vec(basis.row(r)).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn union_laws_on_canonical_forms(
        a in union(4),
        b in union(4),
        c in union(4),
    ) {
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(
            a.union(&b).unwrap().union(&c).unwrap(),
            a.union(&b.union(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.intersect(&b).unwrap().intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );
        let lhs = a.intersect(&b.union(&c).unwrap()).unwrap();
        let rhs = a.intersect(&b).unwrap().union(&a.intersect(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn absorption_is_idempotent(a in union(5)) {
        let renorm = SubspaceUnion::normalize(5, a.members().to_vec()).unwrap();
        prop_assert_eq!(renorm, a);
    }

    #[test]
    fn covering_soundness(u in union(4), m in matrix(4, 4..=4), seed in any::<u64>()) {
        let s = Subspace::nullspace(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let contained = u.contains_subspace(&s).unwrap();
        let mut found_outside = false;
        for _ in 0..100 {
            let p = s.sample_point(&mut rng);
            let in_union = u.contains_vector(&p).unwrap();
            if contained {
                prop_assert!(in_union, "member of a contained subspace escaped the union");
            } else if !in_union {
                found_outside = true;
            }
        }
        if !contained {
            prop_assert!(found_outside, "no witness outside the union in 100 samples");
        }
    }
}

/// The subspace of vectors constant on each block of a partition.
fn constant_on_blocks(p: &SetPartition) -> Subspace {
    let n = p.ground_size();
    let mut rows = Vec::new();
    for block in p.blocks() {
        for &j in &block[1..] {
            let mut row = vec![Rational::zero(); n];
            row[block[0]] = rat(1);
            row[j] = rat(-1);
            rows.push(row);
        }
    }
    let m = if rows.is_empty() {
        RatMatrix::zeros(0, n)
    } else {
        RatMatrix::from_rows(rows)
    };
    Subspace::nullspace(&m)
}

/// Pruning to minimal zero-sum partitions loses nothing at the subspace
/// level: the union over the minimal family equals the union over all of Ψ.
#[test]
fn zero_sum_pruning_is_complete_at_the_subspace_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(2..=7usize);
        let coeffs: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect();
        let base = SetPartition::one_block(n);
        let minimal = zero_sum_partitions(&coeffs, &base).unwrap();
        let full_family: Vec<SetPartition> = all_partitions(n)
            .unwrap()
            .filter(|q| {
                q.blocks().iter().all(|b| {
                    b.iter()
                        .fold(Rational::zero(), |acc, &i| acc + &coeffs[i])
                        .is_zero()
                })
            })
            .collect();
        assert_eq!(minimal.is_empty(), full_family.is_empty());
        if minimal.is_empty() {
            continue;
        }
        let union_of = |family: &[SetPartition]| {
            SubspaceUnion::normalize(n, family.iter().map(constant_on_blocks).collect()).unwrap()
        };
        let from_minimal = union_of(&minimal);
        let from_all = union_of(&full_family);
        assert!(
            from_minimal.eq_as_sets(&from_all).unwrap(),
            "pruning lost solutions for coeffs {coeffs:?}"
        );
    }
}

/// Replacing the final generators by any invertible recombination leaves the
/// zero locus unchanged: the engine only sees the span.
#[test]
fn zero_locus_depends_only_on_the_final_span() {
    let g = Group::cyclic(3);
    let regular = PermRep::regular(&g);
    let arch = shallow_hidden_arch(&regular, &regular, &regular, "relu").unwrap();
    let twin = twin_transform(&arch).unwrap();
    let limits = EngineLimits::default();

    let run = |gens: &[RatMatrix]| {
        let mut memo = MemoTable::new();
        let mut stats = EngineStats::default();
        zero_locus(&twin.layers, gens, &limits, &mut memo, &mut stats).unwrap()
    };
    let baseline = run(&twin.final_generators);

    let s = twin.final_generators.len();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tried = 0;
    while tried < 10 {
        let c = RatMatrix::from_fn(s, s, |_, _| rat(rng.gen_range(-2..=2)));
        if c.rank() != s {
            continue;
        }
        tried += 1;
        let recombined: Vec<RatMatrix> = (0..s)
            .map(|i| {
                let mut acc = RatMatrix::zeros(
                    twin.final_generators[0].rows(),
                    twin.final_generators[0].cols(),
                );
                for (j, gen) in twin.final_generators.iter().enumerate() {
                    if !c.get(i, j).is_zero() {
                        acc = acc.add(&gen.scale(c.get(i, j)));
                    }
                }
                acc
            })
            .collect();
        let result = run(&recombined);
        assert_eq!(result, baseline, "recombination {tried} changed the locus");
    }
}

/// The symbolic relation never depends on the activation tag; only the
/// architecture digest does.
#[test]
fn relation_is_activation_independent() {
    let g = Group::symmetric(3);
    let h = Subgroup::alternating(&g);
    let limits = EngineLimits::default();
    let relu = shallow_regular_arch(&g, &h, "relu").unwrap();
    let tanh = shallow_regular_arch(&g, &h, "tanh").unwrap();
    let rel_relu = rho(&relu, &limits).unwrap();
    let rel_tanh = rho(&tanh, &limits).unwrap();
    assert_eq!(rel_relu.relation, rel_tanh.relation);
    assert_ne!(rel_relu.architecture_digest, rel_tanh.architecture_digest);
}

/// Two runs of the engine produce bit-identical canonical output.
#[test]
fn engine_output_is_reproducible() {
    let g = Group::symmetric(3);
    let arch = shallow_regular_arch(&g, &Subgroup::full(&g), "relu").unwrap();
    let limits = EngineLimits::default();
    let a = rho(&arch, &limits).unwrap();
    let b = rho(&arch, &limits).unwrap();
    assert_eq!(a.relation, b.relation);
    assert_eq!(a.stats.nodes, b.stats.nodes);
    assert_eq!(a.stats.memo_hits, b.stats.memo_hits);
    assert_eq!(
        eqsep::report::relation_to_json(&a),
        eqsep::report::relation_to_json(&b)
    );
}
