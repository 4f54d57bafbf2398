use hallpi::bruteforce::*;
use hallpi::classify::{classify, KPi, Verdict};
use hallpi::{GroupSpec, PrimeSet, Sign};
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

fn pi(text: &str) -> PrimeSet {
    PrimeSet::parse(text).unwrap()
}

fn build(kind: GroupKind, param: u64) -> ConcreteGroup {
    ConcreteGroup::build(kind, param).unwrap()
}

fn census(g: &ConcreteGroup, p: &str) -> CensusReport {
    find_hall_subgroups(g, &pi(p), &Budget::default())
}

/// Element-order profile of a subgroup: order -> number of elements.
fn profile(g: &ConcreteGroup, h: &SubgroupHandle) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &x in &h.element_indices {
        *m.entry(g.element_order(x)).or_insert(0) += 1;
    }
    m
}

fn alt4_profile() -> BTreeMap<u32, usize> {
    BTreeMap::from([(1, 1), (2, 3), (3, 8)])
}

fn dihedral12_profile() -> BTreeMap<u32, usize> {
    BTreeMap::from([(1, 1), (2, 7), (3, 2), (6, 2)])
}

fn sym4_profile() -> BTreeMap<u32, usize> {
    BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)])
}

// Orders from the textbook formulas, independent of the groups module.
fn oracle_order(kind: GroupKind, n: u64) -> usize {
    let f = |m: u64| (1..=m).product::<u64>() as usize;
    let q = n as usize;
    match kind {
        GroupKind::SL2 => q * (q * q - 1),
        GroupKind::PSL2 => q * (q * q - 1) / if q == 2 { 1 } else { 2 },
        GroupKind::GL2 => q * (q * q - 1) * (q - 1),
        GroupKind::PGL2 => q * (q * q - 1),
        GroupKind::Sym => f(n),
        GroupKind::Alt => f(n) / 2,
        GroupKind::PSL3 => q.pow(3) * (q * q - 1) * (q.pow(3) - 1),
    }
}

#[test]
fn build_examples() {
    assert_eq!(build(GroupKind::PSL2, 7).order(), 168);
    assert_eq!(build(GroupKind::Sym, 7).order(), 5040);
    assert_eq!(build(GroupKind::SL2, 5).order(), 120);
}

#[test]
fn build_orders_match_formulas() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for kind in [GroupKind::SL2, GroupKind::PSL2, GroupKind::GL2, GroupKind::PGL2] {
            assert_eq!(build(kind, p).order(), oracle_order(kind, p), "{kind}({p})");
        }
    }
    for n in 3..=7u64 {
        assert_eq!(build(GroupKind::Sym, n).order(), oracle_order(GroupKind::Sym, n));
        assert_eq!(build(GroupKind::Alt, n).order(), oracle_order(GroupKind::Alt, n));
    }
    assert_eq!(build(GroupKind::PSL3, 2).order(), 168);
    assert_eq!(build(GroupKind::PSL3, 3).order(), 5616);
}

#[test]
fn build_rejects_out_of_range_parameters() {
    assert_eq!(ConcreteGroup::build(GroupKind::SL2, 9).unwrap_err(), BruteError::NonPrimeField(9));
    assert_eq!(ConcreteGroup::build(GroupKind::PSL2, 19).unwrap_err(), BruteError::OutOfRange(19));
    assert_eq!(ConcreteGroup::build(GroupKind::Sym, 9).unwrap_err(), BruteError::OutOfRange(9));
    assert_eq!(ConcreteGroup::build(GroupKind::PSL3, 5).unwrap_err(), BruteError::OutOfRange(5));
    let small = Budget {
        max_order: 100,
        ..Budget::default()
    };
    assert!(matches!(
        ConcreteGroup::build_with_budget(GroupKind::PSL2, 7, &small),
        Err(BruteError::BudgetExceeded(_))
    ));
}

#[test]
fn group_axioms_hold_in_psl2_7() {
    let g = build(GroupKind::PSL2, 7);
    let e = g.identity();
    let n = g.order() as u32;
    for a in 0..n {
        assert_eq!(g.mul(a, e), a);
        assert_eq!(g.mul(e, a), a);
        assert_eq!(g.mul(a, g.inverse(a)), e);
        assert_eq!((g.order() as u32) % g.element_order(a), 0);
    }
    for a in (0..n).step_by(7) {
        for b in (0..n).step_by(5) {
            for c in (0..n).step_by(11) {
                assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            }
        }
    }
}

#[test]
fn projective_kinds_store_least_scalar_multiple() {
    let g = build(GroupKind::PSL2, 7);
    // -I and I are the same element
    assert_eq!(g.index_of(&[6, 0, 0, 6]), Some(g.identity()));
    for i in 0..g.order() as u32 {
        let e = g.entries(i);
        let neg: Vec<u8> = e.iter().map(|&x| ((7 - x as u32) % 7) as u8).collect();
        assert!(e <= neg, "stored {e:?} is not the least multiple");
        assert_eq!(g.index_of(&neg), Some(i));
    }
}

#[test]
fn census_psl2_5() {
    let g = build(GroupKind::PSL2, 5);
    let c = census(&g, "2,3");
    assert!(c.exhaustive);
    assert_eq!(c.hall_order, 12);
    assert_eq!(c.class_count, 1);
    assert_eq!(c.halls_found.len(), 5);
    assert_eq!(profile(&g, &c.halls_found[0]), alt4_profile());
}

#[test]
fn census_psl2_7_two_classes_of_sym4() {
    let g = build(GroupKind::PSL2, 7);
    let c = census(&g, "2,3");
    assert_eq!(c.hall_order, 24);
    assert_eq!(c.class_count, 2);
    assert_eq!(c.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![7, 7]);
    for h in &c.halls_found {
        assert_eq!(profile(&g, h), sym4_profile());
    }
    // the two classes stay apart when recomputed from scratch
    let classes = conjugacy_class_count(&g, &c.halls_found);
    assert_eq!(classes.len(), 2);
}

#[test]
fn census_psl2_11_alt4_and_dihedral() {
    let g = build(GroupKind::PSL2, 11);
    let c = census(&g, "2,3");
    assert_eq!(c.hall_order, 12);
    assert_eq!(c.class_count, 2);
    let profiles: BTreeSet<_> = c.representatives().iter().map(|h| profile(&g, h)).collect();
    assert_eq!(profiles, BTreeSet::from([alt4_profile(), dihedral12_profile()]));
}

#[test]
fn census_symmetric_groups() {
    let g = build(GroupKind::Sym, 7);
    let c = census(&g, "2,3");
    assert_eq!((c.hall_order, c.class_count, c.halls_found.len()), (144, 1, 35));
    // Sym3 × Sym4: exactly two orbits, of sizes 3 and 4
    let h = &c.halls_found[0];
    let mut orbit_sizes = orbits(&g, h);
    orbit_sizes.sort();
    assert_eq!(orbit_sizes, vec![3, 4]);

    let c5 = census(&build(GroupKind::Sym, 5), "2,3");
    assert_eq!((c5.hall_order, c5.class_count), (24, 1));
    let c6 = census(&build(GroupKind::Sym, 6), "2,3");
    assert_eq!((c6.hall_order, c6.class_count), (144, 0));
    assert!(c6.exhaustive);
}

fn orbits(g: &ConcreteGroup, h: &SubgroupHandle) -> Vec<usize> {
    let n = g.entries(0).len();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let orbit: BTreeSet<u8> = h.element_indices.iter().map(|&x| g.entries(x)[s]).collect();
        for &o in &orbit {
            seen[o as usize] = true;
        }
        sizes.push(orbit.len());
    }
    sizes
}

#[test]
fn every_hall_is_a_pi_hall_subgroup() {
    let cases = [
        (GroupKind::SL2, 7, "2,3"),
        (GroupKind::PSL2, 11, "2,3,5"),
        (GroupKind::GL2, 5, "2,3"),
        (GroupKind::PGL2, 7, "2,3"),
        (GroupKind::Alt, 7, "2,3"),
        (GroupKind::Sym, 4, "2"),
        (GroupKind::PSL3, 3, "2,3"),
    ];
    for (kind, p, text) in cases {
        let g = build(kind, p);
        let set = pi(text);
        let c = find_hall_subgroups(&g, &set, &Budget::default());
        assert!(c.exhaustive);
        let part = hallpi::arith::pi_part_u64(g.order() as u64, &set) as usize;
        assert_eq!(c.hall_order, part);
        for h in &c.halls_found {
            assert_eq!(h.order, c.hall_order);
            let index = (g.order() / h.order) as u64;
            assert_eq!(hallpi::arith::pi_part_u64(index, &set), 1);
            assert!(h.element_indices.iter().all(|&x| g.is_pi_element(x, &set)));
            assert!(h.generator_witness.len() <= 3, "{kind}({p}) witness {:?}", h.generator_witness);
            h.check(&g).unwrap();
        }
        let total: usize = c.classes.iter().map(Vec::len).sum();
        assert_eq!(total, c.halls_found.len());
    }
}

#[test]
fn class_partition_edge_cases() {
    let g = build(GroupKind::Sym, 4);
    let c = census(&g, "2");
    assert_eq!(c.halls_found.len(), 3);
    assert_eq!(conjugacy_class_count(&g, &c.halls_found), vec![vec![0, 1, 2]]);
    assert_eq!(conjugacy_class_count(&g, &c.halls_found[..1]), vec![vec![0]]);
}

#[test]
fn dpi_witnesses() {
    let budget = Budget::default();
    let g = build(GroupKind::SL2, 5);
    let c = census(&g, "2,3");
    assert_eq!(c.class_count, 1);
    let w = find_dpi_counterexample(&g, &pi("2,3"), &c, &budget).expect("witness in SL2(5)");
    // 2.Sym3: cyclic of order 4 acting on one of order 3
    assert_eq!(w.order, 12);
    assert!(c.halls_found.iter().all(|h| !w.is_subset_of(h)));
    w.check(&g).unwrap();

    let s4 = build(GroupKind::Sym, 4);
    let c = census(&s4, "2,3");
    assert_eq!(find_dpi_counterexample(&s4, &pi("2,3"), &c, &budget), None);

    let g = build(GroupKind::PSL2, 7);
    let c = census(&g, "2,3");
    let w = find_dpi_counterexample(&g, &pi("2,3"), &c, &budget).unwrap();
    assert_eq!(w.order, 24);
    let first = &c.halls_found[c.classes[0][0]];
    let classes = conjugacy_class_count(&g, &[first.clone(), w]);
    assert_eq!(classes.len(), 2);
}

#[test]
fn verify_report_agrees_with_classifier() {
    let budget = Budget::default();
    for (text, p) in [("PSL(2,7)", "2,3"), ("Sym(7)", "2,3"), ("PSL(3,3)", "2,3")] {
        let spec = GroupSpec::parse_valid(text).unwrap();
        let (kind, param) = GroupKind::from_spec(&spec).unwrap();
        let g = build(kind, param);
        let report = classify(&spec, &pi(p)).unwrap();
        let c = find_hall_subgroups(&g, &pi(p), &budget);
        let v = verify_report(&g, &report, &c, &budget);
        assert!(v.passed, "{text}: {:?}", v.failures());
    }
}

#[test]
fn verify_report_flags_a_corrupted_report() {
    let budget = Budget::default();
    let spec = GroupSpec::parse_valid("PSL(2,7)").unwrap();
    let g = build(GroupKind::PSL2, 7);
    let mut report = classify(&spec, &pi("2,3")).unwrap();
    report.k_pi = KPi::Exact(1);
    report.c_pi = Verdict::Yes;
    let c = find_hall_subgroups(&g, &pi("2,3"), &budget);
    let v = verify_report(&g, &report, &c, &budget);
    assert!(!v.passed);
    let failed: Vec<&str> = v.failures().iter().map(|f| f.field.as_str()).collect();
    assert_eq!(failed, vec!["k_pi", "c_pi"]);
    let k = v.checks.iter().find(|c| c.field == "k_pi").unwrap();
    assert_eq!((k.classify.as_str(), k.census.as_str()), ("1", "2"));
}

#[test]
fn class_counts_survive_regeneration() {
    let budget = Budget::default();
    let alt = ConcreteGroup::from_generators(GroupKind::PSL2, 7, &[vec![1, 1, 0, 1], vec![1, 0, 1, 1]], &budget).unwrap();
    assert_eq!(census(&alt, "2,3").class_count, 2);
    let s7 = ConcreteGroup::from_generators(
        GroupKind::Sym,
        7,
        &[vec![1, 0, 2, 3, 4, 5, 6], vec![0, 2, 3, 4, 5, 6, 1]],
        &budget,
    )
    .unwrap();
    let c = census(&s7, "2,3");
    assert_eq!((c.class_count, c.halls_found.len()), (1, 35));
    let sl = ConcreteGroup::from_generators(GroupKind::SL2, 11, &[vec![1, 1, 0, 1], vec![1, 0, 1, 1]], &budget).unwrap();
    assert_eq!(census(&sl, "2,3").class_count, 2);
}

#[test]
fn regeneration_with_too_few_generators_is_caught() {
    let budget = Budget::default();
    let err = ConcreteGroup::from_generators(GroupKind::Sym, 5, &[vec![1, 2, 3, 4, 0]], &budget).unwrap_err();
    assert!(matches!(err, BruteError::OrderMismatch { built: 5, .. }));
    let err = ConcreteGroup::from_generators(GroupKind::Alt, 5, &[vec![1, 0, 2, 3, 4]], &budget).unwrap_err();
    assert!(matches!(err, BruteError::BadGenerator(_)));
}

fn image_sets(from: &ConcreteGroup, to: &ConcreteGroup, halls: &[SubgroupHandle]) -> BTreeSet<Vec<u32>> {
    halls
        .iter()
        .map(|h| {
            let img: BTreeSet<u32> = h
                .element_indices
                .iter()
                .map(|&x| to.index_of(&from.entries(x)).expect("image exists"))
                .collect();
            img.into_iter().collect()
        })
        .collect()
}

#[test]
fn sl2_halls_map_onto_psl2_halls() {
    for q in [5u64, 7, 11, 13] {
        for text in ["2,3", "2,3,5"] {
            if pi(text).contains(q) {
                continue;
            }
            let sl = build(GroupKind::SL2, q);
            let psl = build(GroupKind::PSL2, q);
            let cs = census(&sl, text);
            let cp = census(&psl, text);
            assert_eq!(cs.class_count, cp.class_count, "q={q} π={text}");
            assert_eq!(cs.hall_order, 2 * cp.hall_order);
            let images = image_sets(&sl, &psl, &cs.halls_found);
            let targets: BTreeSet<Vec<u32>> = cp.halls_found.iter().map(|h| h.element_indices.clone()).collect();
            assert_eq!(images, targets, "q={q} π={text}");
        }
    }
}

#[test]
fn alt_halls_are_sym_halls_cut_down() {
    for n in [5u64, 6, 7] {
        let sym = build(GroupKind::Sym, n);
        let alt = build(GroupKind::Alt, n);
        let cs = census(&sym, "2,3");
        let ca = census(&alt, "2,3");
        assert_eq!(cs.class_count, ca.class_count, "n={n}");
        let cut: BTreeSet<Vec<u32>> = cs
            .halls_found
            .iter()
            .map(|h| {
                let evens: BTreeSet<u32> = h
                    .element_indices
                    .iter()
                    .filter_map(|&x| alt.index_of(&sym.entries(x)))
                    .collect();
                evens.into_iter().collect()
            })
            .collect();
        let direct: BTreeSet<Vec<u32>> = ca.halls_found.iter().map(|h| h.element_indices.clone()).collect();
        assert_eq!(cut, direct, "n={n}");
    }
}

#[test]
fn psl3_2_matches_psl2_7() {
    let a = census(&build(GroupKind::PSL3, 2), "2,3");
    let b = census(&build(GroupKind::PSL2, 7), "2,3");
    assert_eq!((a.hall_order, a.class_count), (b.hall_order, b.class_count));
}

#[test]
fn census_export_is_stable_json() {
    let g = build(GroupKind::PSL2, 7);
    let c = census(&g, "2,3");
    let e = c.export(&g);
    assert_eq!(e.schema, 1);
    assert_eq!(e.class_count, 2);
    assert_eq!(e.classes.iter().map(|c| c.size).collect::<Vec<_>>(), vec![7, 7]);
    let a = serde_json::to_string(&e).unwrap();
    let b = serde_json::to_string(&census(&g, "2,3").export(&g)).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["hall_order"], 24);
    for class in e.classes {
        let idx: Vec<u32> = class.generators.iter().map(|m| g.index_of(m).unwrap()).collect();
        assert_eq!(g.closure(&idx, 24).unwrap().len(), 24);
    }
}

#[test]
fn budget_truncation_is_reported() {
    let g = build(GroupKind::Sym, 7);
    let tight = Budget {
        max_closures: 20,
        ..Budget::default()
    };
    let c = find_hall_subgroups(&g, &pi("2,3"), &tight);
    assert!(!c.exhaustive);
}

#[test]
fn from_spec_covers_the_explicit_kinds() {
    let cases = [
        ("PSL(2,7)", Some((GroupKind::PSL2, 7))),
        ("SL(2,5)", Some((GroupKind::SL2, 5))),
        ("GL(2,5,+)", Some((GroupKind::GL2, 5))),
        ("Sym(6)", Some((GroupKind::Sym, 6))),
        ("Alt(7)", Some((GroupKind::Alt, 7))),
        ("PSL(3,3)", Some((GroupKind::PSL3, 3))),
        ("PSL(3,7)", None),
        ("M11", None),
    ];
    for (text, want) in cases {
        let spec = GroupSpec::parse_valid(text).unwrap();
        assert_eq!(GroupKind::from_spec(&spec), want, "{text}");
    }
    assert_eq!(GroupKind::from_spec(&GroupSpec::gl2(5, Sign::Minus)), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugated_generators_give_the_same_census(qi in 0usize..4, seed in 0u32..100_000) {
        let q = [5u64, 7, 11, 13][qi];
        let base = build(GroupKind::PSL2, q);
        let s = seed % base.order() as u32;
        let gens: Vec<Vec<u8>> = base.generators().iter().map(|&g| base.entries(base.conjugate(g, s))).collect();
        let regen = ConcreteGroup::from_generators(GroupKind::PSL2, q, &gens, &Budget::default()).unwrap();
        let p = pi("2,3");
        let c1 = find_hall_subgroups(&base, &p, &Budget::default());
        let c2 = find_hall_subgroups(&regen, &p, &Budget::default());
        prop_assert_eq!(c1.class_count, c2.class_count);
        prop_assert_eq!(c1.halls_found.len(), c2.halls_found.len());
    }

    #[test]
    fn census_partition_is_consistent(gi in 0usize..6, mask in 1u8..16) {
        let (kind, param) = [
            (GroupKind::PSL2, 7u64),
            (GroupKind::SL2, 5),
            (GroupKind::PGL2, 5),
            (GroupKind::Alt, 6),
            (GroupKind::Sym, 5),
            (GroupKind::PSL2, 11),
        ][gi];
        let primes: Vec<u64> = [2u64, 3, 5, 7].iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        let set = PrimeSet::of(&primes);
        let g = build(kind, param);
        let c = find_hall_subgroups(&g, &set, &Budget::default());
        prop_assert!(c.exhaustive);
        let mut seen = BTreeSet::new();
        for class in &c.classes {
            prop_assert!(!class.is_empty());
            prop_assert_eq!(g.order() % class.len(), 0);
            for &i in class {
                prop_assert!(seen.insert(i));
            }
        }
        prop_assert_eq!(seen.len(), c.halls_found.len());
        prop_assert_eq!(c.class_count, c.classes.len());
        for h in &c.halls_found {
            prop_assert_eq!(h.order, c.hall_order);
        }
    }
}
