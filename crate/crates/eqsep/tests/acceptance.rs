//! Acceptance suite: one test per criterion, each printing a pass line with
//! its headline numbers. Everything here is exact unless the criterion is
//! explicitly about the floating-point oracle.

use eqsep::empirical::{adjacency, mc_separation, wl_colors, ActivationKind, OracleOptions};
use eqsep::equivariant::{commutant_basis, double_coset_basis, ign_layer, Architecture, PermRep};
use eqsep::exactlin::{rat, RatMatrix, Rational, Subspace, SubspaceUnion};
use eqsep::groups::{all_subgroups, Group};
use eqsep::partitions::{all_partitions, zero_sum_partitions, SetPartition};
use eqsep::separation::{
    cnn_arch, diagonal_subspace, rho, shallow_regular_arch, EngineLimits, IdentificationRelation,
};
use eqsep::suites::{
    regular_law_instances, suite_activations, suite_cnn, suite_depth, suite_hierarchy,
    suite_regular, suite_width, SuiteReport,
};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_suite(report: &SuiteReport) {
    for check in &report.checks {
        assert!(
            check.passed,
            "[{}] {} failed: {}",
            report.suite, check.name, check.detail
        );
    }
}

#[test]
fn criterion_01_regular_representation_orbit_law() {
    let report = suite_regular(&EngineLimits::default()).unwrap();
    assert_suite(&report);
    println!(
        "criterion 01 PASS: orbit law exact on {} (G, H) instances",
        report.checks.len()
    );
}

#[test]
fn criterion_02_cnn_filter_hierarchy() {
    let report = suite_cnn(&EngineLimits::default()).unwrap();
    assert_suite(&report);
    println!("criterion 02 PASS: CNN filter hierarchy on Z_3 ({} checks)", report.checks.len());
}

#[test]
fn criterion_03_depth_stabilization() {
    let report = suite_depth(&EngineLimits::default()).unwrap();
    assert_suite(&report);
    println!("criterion 03 PASS: repetition threshold 1 with monotone chains up to 3 reps");
}

#[test]
fn criterion_04_width_and_multiplicity_invariance() {
    let report = suite_width(&EngineLimits::default()).unwrap();
    assert_suite(&report);
    println!("criterion 04 PASS: multiplicity f in {{1,2,3}} and the split law on Z_3");
}

#[test]
fn criterion_05_subgroup_hierarchy() {
    let report = suite_hierarchy(&EngineLimits::default()).unwrap();
    assert_suite(&report);
    println!("criterion 05 PASS: subgroup hierarchy {{e}} < A_3 < S_3");
}

#[test]
fn criterion_06_equivariant_basis_dimensions() {
    // dim Hom_{S_4}(R^{[4]²}, R^{[4]²}) = 15.
    let s4 = Group::symmetric(4);
    let pairs = PermRep::power(&s4, 2).unwrap();
    let commutant = commutant_basis(&pairs, &pairs).unwrap();
    assert_eq!(commutant.count(), 15);

    // dim Hom_{Z_n}(R^{Z_n}, R^{Z_n}) = n (the circulant shifts).
    for n in 2..=5usize {
        let g = Group::cyclic(n);
        let reg = PermRep::regular(&g);
        assert_eq!(commutant_basis(&reg, &reg).unwrap().count(), n);
    }

    // Double-coset span equals commutant span for every subgroup pair of S_3.
    let s3 = Group::symmetric(3);
    let subgroups = all_subgroups(&s3).unwrap();
    assert_eq!(subgroups.len(), 6);
    let mut checked = 0;
    for k in &subgroups {
        for h in &subgroups {
            let dc = double_coset_basis(k, h).unwrap();
            let cm = commutant_basis(dc.source(), dc.target()).unwrap();
            assert!(
                dc.span_equals(&cm),
                "span mismatch for |K|={} |H|={}",
                k.order(),
                h.order()
            );
            checked += 1;
        }
    }
    println!(
        "criterion 06 PASS: S_4 pair commutant = 15, circulants = n, {} double-coset spans match",
        checked
    );
}

#[test]
fn criterion_07_zero_sum_partition_oracle() {
    // Exhaustive: every coefficient vector with entries in {−2,…,2} of
    // length 1..=6 over a single base block, against the brute-force
    // minimal-filter over all partitions.
    let mut cases = 0u64;
    for len in 1..=6usize {
        let base = SetPartition::one_block(len);
        let partitions: Vec<SetPartition> = all_partitions(len).unwrap().collect();
        let mut coeffs = vec![-2i64; len];
        loop {
            let rationals: Vec<Rational> = coeffs.iter().map(|&c| rat(c)).collect();
            let got = zero_sum_partitions(&rationals, &base).unwrap();
            let want = brute_force_minimal_zero_sum(&rationals, &partitions);
            assert_eq!(got, want, "coeffs {coeffs:?}");
            cases += 1;
            // Next vector in the little-endian odometer order.
            let mut i = 0;
            loop {
                if i == len {
                    break;
                }
                if coeffs[i] < 2 {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = -2;
                i += 1;
            }
            if i == len {
                break;
            }
        }
    }
    assert_eq!(cases, 5 + 25 + 125 + 625 + 3125 + 15625);
    println!("criterion 07 PASS: zero-sum enumeration matches brute force on {cases} vectors");
}

fn brute_force_minimal_zero_sum(
    coeffs: &[Rational],
    partitions: &[SetPartition],
) -> Vec<SetPartition> {
    let zero_sum = |p: &SetPartition| {
        p.blocks().iter().all(|b| {
            b.iter()
                .fold(Rational::zero(), |acc, &i| acc + &coeffs[i])
                .is_zero()
        })
    };
    let in_psi: Vec<&SetPartition> = partitions.iter().filter(|p| zero_sum(p)).collect();
    let mut minimal: Vec<SetPartition> = in_psi
        .iter()
        .filter(|q| {
            !in_psi
                .iter()
                .any(|r| r != *q && r.refines(q).unwrap())
        })
        .map(|q| (*q).clone())
        .collect();
    minimal.sort();
    minimal
}

/// Relations of the architectures used by criteria 1–5, with their input
/// representations.
fn relations_from_criteria_1_to_5() -> Vec<(String, PermRep, IdentificationRelation)> {
    let limits = EngineLimits::default();
    let mut out = Vec::new();
    for (label, group, h) in regular_law_instances() {
        let arch = shallow_regular_arch(&group, &h, "relu").unwrap();
        let rep = arch.input_rep().clone();
        out.push((label, rep, rho(&arch, &limits).unwrap()));
    }
    for k in 1..=3usize {
        let arch = cnn_arch(3, k, "relu").unwrap();
        let rep = arch.input_rep().clone();
        out.push((format!("Z3 {k}-CNN"), rep, rho(&arch, &limits).unwrap()));
    }
    // Depth chain (criterion 3) and widened architectures (criterion 4).
    let z3 = Group::cyclic(3);
    for (hname, h) in [
        ("full", eqsep::groups::Subgroup::full(&z3)),
        ("trivial", eqsep::groups::Subgroup::trivial(&z3)),
    ] {
        let base = shallow_regular_arch(&z3, &h, "relu").unwrap();
        for m in 1..=3usize {
            let arch = base.with_repeated_layer(0, m).unwrap();
            let rep = arch.input_rep().clone();
            out.push((
                format!("Z3 H={hname} reps={m}"),
                rep,
                rho(&arch, &limits).unwrap(),
            ));
        }
    }
    // Hierarchy instances (criterion 5).
    let s3 = Group::symmetric(3);
    let source = PermRep::regular(&s3);
    let target = PermRep::trivial(&s3);
    for (hname, h) in [
        ("trivial", eqsep::groups::Subgroup::trivial(&s3)),
        ("A3", eqsep::groups::Subgroup::alternating(&s3)),
        ("full", eqsep::groups::Subgroup::full(&s3)),
    ] {
        let hidden = PermRep::from_cosets(&s3, &h).unwrap();
        let arch =
            eqsep::separation::shallow_hidden_arch(&source, &hidden, &target, "relu").unwrap();
        out.push((
            format!("S3 hidden G/{hname}"),
            source.clone(),
            rho(&arch, &limits).unwrap(),
        ));
    }
    out
}

#[test]
fn criterion_08_relation_algebra_properties() {
    // Reflexivity, swap symmetry, and diagonal equivariance for every
    // relation computed by criteria 1–5, plus sampled transitivity.
    let relations = relations_from_criteria_1_to_5();
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    for (label, rep, rel) in &relations {
        rel.check_invariants(rep)
            .unwrap_or_else(|e| panic!("{label}: {e}"));
        assert_transitivity_sampled(&rel.relation, &mut rng, 100, label);
    }

    // Absorption and distributivity laws on randomized unions.
    let mut rng = ChaCha8Rng::seed_from_u64(1988);
    for instance in 0..1000 {
        let ambient = rng.gen_range(2..=8usize);
        let a = random_union(&mut rng, ambient);
        let b = random_union(&mut rng, ambient);
        let c = random_union(&mut rng, ambient);

        // Absorption idempotence.
        let renorm = SubspaceUnion::normalize(ambient, a.members().to_vec()).unwrap();
        assert_eq!(renorm, a, "instance {instance}");

        // Commutativity.
        assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());

        // Associativity.
        assert_eq!(
            a.union(&b).unwrap().union(&c).unwrap(),
            a.union(&b.union(&c).unwrap()).unwrap()
        );
        assert_eq!(
            a.intersect(&b).unwrap().intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );

        // Distributivity of ∩ over ∪.
        let lhs = a.intersect(&b.union(&c).unwrap()).unwrap();
        let rhs = a
            .intersect(&b)
            .unwrap()
            .union(&a.intersect(&c).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "instance {instance}");
    }
    println!(
        "criterion 08 PASS: invariants on {} relations, lattice laws on 1000 random instances",
        relations.len()
    );
}

fn random_union(rng: &mut ChaCha8Rng, ambient: usize) -> SubspaceUnion {
    let count = rng.gen_range(1..=3usize);
    let members = (0..count)
        .map(|_| {
            let rows = rng.gen_range(0..=ambient);
            let m = RatMatrix::from_fn(rows, ambient, |_, _| rat(rng.gen_range(-3..=3)));
            Subspace::nullspace(&m)
        })
        .collect();
    SubspaceUnion::normalize(ambient, members).unwrap()
}

/// For random triples with (α,β) and (β,γ) in the relation (built from
/// member subspaces), (α,γ) must also lie in it.
fn assert_transitivity_sampled(
    relation: &SubspaceUnion,
    rng: &mut ChaCha8Rng,
    samples: usize,
    label: &str,
) {
    if relation.is_empty_set() {
        return;
    }
    let n = relation.ambient_dim() / 2;
    let members = relation.members();
    let mut done = 0;
    let mut attempts = 0;
    while done < samples && attempts < samples * 20 {
        attempts += 1;
        let s = &members[rng.gen_range(0..members.len())];
        let point = s.sample_point(rng);
        let (alpha, beta) = (&point[..n], &point[n..]);
        // Find γ with (β, γ) in some member: solve the right half of the
        // member's constraints against the fixed β.
        let t = &members[rng.gen_range(0..members.len())];
        let c = t.constraints();
        let left = RatMatrix::from_fn(c.rows(), n, |r, j| c.get(r, j).clone());
        let right = RatMatrix::from_fn(c.rows(), n, |r, j| c.get(r, j + n).clone());
        let rhs: Vec<Rational> = left.mul_vec(beta).iter().map(|e| -e.clone()).collect();
        let Some(gamma) = right.solve(&rhs) else {
            continue;
        };
        let mut pair = beta.to_vec();
        pair.extend(gamma.iter().cloned());
        assert!(
            relation.contains_vector(&pair).unwrap(),
            "{label}: constructed (β,γ) should be in the relation"
        );
        let mut ac = alpha.to_vec();
        ac.extend(gamma);
        assert!(
            relation.contains_vector(&ac).unwrap(),
            "{label}: transitivity violated"
        );
        done += 1;
    }
    assert!(done > 0, "{label}: no transitivity samples produced");
}

#[test]
fn criterion_09_symbolic_empirical_agreement() {
    let report = suite_activations(&EngineLimits::default(), &OracleOptions::default()).unwrap();
    assert_suite(&report);
    println!(
        "criterion 09 PASS: oracle agreement across {} checks (relu vs tanh, 1000 samples)",
        report.checks.len()
    );
}

#[test]
fn criterion_10_ign_smoke_test() {
    // Depth-1 twin of a full 2-IGN layer at n = 3: an 18-dimensional pair
    // space, well inside the resource caps.
    let layer = ign_layer(3, 2, 1, 1).unwrap();
    let arch = Architecture::new(vec![layer], "relu").unwrap();
    let rel = rho(&arch, &EngineLimits::default()).unwrap();
    assert_eq!(rel.relation.ambient_dim(), 18);
    assert!(rel
        .relation
        .contains_subspace(&diagonal_subspace(9))
        .unwrap());
    assert!(rel.equivariant_under(arch.input_rep()).unwrap());
    assert!(rel.swap_invariant().unwrap());

    // Sampled 2-IGNs separate the triangle from the 3-path (different degree
    // sequences), consistent with pair-refinement WL.
    let triangle = adjacency(3, &[(0, 1), (1, 2), (2, 0)]);
    let path = adjacency(3, &[(0, 1), (1, 2)]);
    assert_ne!(
        wl_colors(&triangle, 2, 10).unwrap(),
        wl_colors(&path, 2, 10).unwrap()
    );
    let flatten = |adj: &Vec<Vec<bool>>| -> Vec<f64> {
        adj.iter()
            .flat_map(|row| row.iter().map(|&b| if b { 1.0 } else { 0.0 }))
            .collect()
    };
    let ign = ign_layer(3, 2, 1, 1).unwrap();
    let group = ign.group().clone();
    let readout =
        eqsep::equivariant::full_layer(ign.target(), &PermRep::trivial(&group)).unwrap();
    let sample_arch = Architecture::new(vec![ign, readout], "relu").unwrap();
    let verdict = mc_separation(
        &sample_arch,
        ActivationKind::ReLU,
        &flatten(&triangle),
        &flatten(&path),
        &OracleOptions::default(),
    )
    .unwrap();
    assert!(verdict.is_separated(), "{verdict:?}");
    println!(
        "criterion 10 PASS: depth-1 2-IGN relation ({} members in dim 18), triangle vs path separated",
        rel.relation.member_count()
    );
}
