use hallpi::arith::{pi_part, r_part_product, PrimeSet, Sign};
use hallpi::groups::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn v(spec: &GroupSpec) -> GroupSpec {
    validate(spec).unwrap()
}

fn order_of(text: &str) -> BigUint {
    order(&GroupSpec::parse_valid(text).unwrap()).order.value().clone()
}

#[test]
fn validate_examples() {
    let sp2 = v(&GroupSpec::psp(2, 7));
    assert_eq!(sp2.family, Family::LinearUnitary);
    assert_eq!(sp2.n, Some(2));
    assert_eq!(sp2.eta, Some(Sign::Plus));
    assert_eq!(sp2.variant, Variant::Simple);
    assert_eq!(sp2.aliases, vec!["PSp(2,7)".to_string()]);

    let o5 = v(&GroupSpec::orthogonal(5, 7, None));
    assert_eq!(o5.without_aliases(), GroupSpec::psp(4, 7));
    assert_eq!(o5.aliases, vec!["O(5,7)".to_string()]);

    assert!(matches!(validate(&GroupSpec::alt(4)), Err(GroupError::NonSimple(_))));
}

#[test]
fn validate_rejections() {
    let bad = |t: &str| GroupSpec::parse_valid(t).unwrap_err();
    assert!(matches!(bad("PSL(2,2)"), GroupError::NonSimple(_)));
    assert!(matches!(bad("PSL(2,3)"), GroupError::NonSimple(_)));
    assert!(matches!(bad("PSU(3,2)"), GroupError::NonSimple(_)));
    assert!(matches!(bad("Sym(1)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("Sp(5,7)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("Sp(4,8)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("O(7,4)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("O(6,7)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("GL(3,7)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("2G2(3)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("2G2(9)"), GroupError::InvalidParameter { .. }));
    assert!(matches!(bad("O+(4,7)"), GroupError::NonSimple(_)));
    assert!(matches!(GroupSpec::parse("PSL(2,6)").unwrap_err(), GroupError::InvalidParameter { .. }));
    assert!(matches!(GroupSpec::parse("Foo(3)").unwrap_err(), GroupError::Parse(_)));
    assert!(matches!(GroupSpec::parse("PSL(2,7").unwrap_err(), GroupError::Parse(_)));
    assert!(GroupSpec::parse_valid("O+(8,2)").is_ok());
    assert!(GroupSpec::parse_valid("2G2(27)").is_ok());
}

#[test]
fn normalisations() {
    let canon = |t: &str| GroupSpec::parse_valid(t).unwrap().without_aliases().to_string();
    assert_eq!(canon("O(3,7)"), "PSL(2,7)");
    assert_eq!(canon("Omega(3,9)"), "PSL(2,9)");
    assert_eq!(canon("O(5,7)"), "PSp(4,7)");
    assert_eq!(canon("O+(6,7)"), "PSL(4,7)");
    assert_eq!(canon("O-(6,7)"), "PSL(4,7,-)");
    assert_eq!(canon("Omega-(4,7)"), "PSL(2,49)");
    assert_eq!(canon("Omega+(6,7)"), "Omega+(6,7)");
    assert_eq!(canon("SU(2,7)"), "SL(2,7)");
    assert_eq!(canon("GU(2,7)"), "GL(2,7,-)");
    assert_eq!(canon("Sp(2,5)"), "SL(2,5)");
    assert_eq!(canon("E6-(5)"), "E6(5,-)");
    assert_eq!(canon("2E6(5)"), "E6(5,-)");
    assert_eq!(canon("PSL(3,5^2)"), "PSL(3,25)");
}

#[test]
fn order_examples() {
    assert_eq!(order_of("PSL(2,7)"), BigUint::from(168u32));
    assert_eq!(order_of("Sym(7)"), BigUint::from(5040u32));
    assert_eq!(order_of("M11"), BigUint::from(7920u32));
    let f = order(&GroupSpec::parse_valid("PSL(2,7)").unwrap()).order;
    assert_eq!(f.factors_u64(), vec![(2, 3), (3, 1), (7, 1)]);
    assert_eq!(
        order(&GroupSpec::parse_valid("M11").unwrap()).order.factors_u64(),
        vec![(2, 4), (3, 2), (5, 1), (11, 1)]
    );
    // reference values for a few named groups
    assert_eq!(order_of("PSL(3,4)"), BigUint::from(20160u32));
    assert_eq!(order_of("PSU(3,3)"), BigUint::from(6048u32));
    assert_eq!(order_of("PSp(4,3)"), BigUint::from(25920u32));
    assert_eq!(order_of("O+(8,2)"), BigUint::from(174_182_400u64));
    assert_eq!(order_of("G2(3)"), BigUint::from(4_245_696u64));
    assert_eq!(order_of("2G2(27)"), BigUint::from(10_073_444_472u64));
    assert_eq!(order_of("3D4(3)").to_string(), "20560831566912");
    assert_eq!(order_of("PSL(2,49)"), BigUint::from(58800u32));
}

#[test]
fn prime_spectrum_examples() {
    let spec = |t: &str| prime_spectrum(&GroupSpec::parse_valid(t).unwrap());
    assert_eq!(spec("PSL(2,7)"), PrimeSet::of(&[2, 3, 7]));
    assert_eq!(spec("Sp(4,7)"), PrimeSet::of(&[2, 3, 5, 7]));
    assert_eq!(spec("G2(11)"), PrimeSet::of(&[2, 3, 5, 7, 11, 19, 37]));
}

#[test]
fn sporadic_table_consistent() {
    for s in SPORADICS {
        assert_eq!(s.factored_order().value(), &s.order_value(), "{}", s.name());
        assert_eq!(Sporadic::from_name(s.name()), Some(s));
    }
}

fn sample_specs() -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 25, 27] {
        for n in 2..=6u32 {
            for eta in [Sign::Plus, Sign::Minus] {
                for t in [GroupSpec::psl(n, q, eta), GroupSpec::sl(n, q, eta)] {
                    if let Ok(s) = validate(&t) {
                        out.push(s);
                    }
                }
            }
        }
        if q % 2 == 1 {
            for n in [2u32, 4, 6, 8] {
                out.extend(validate(&GroupSpec::psp(n, q)));
                out.push(v(&GroupSpec::sp(n, q)));
            }
            for n in [7u32, 9] {
                out.push(v(&GroupSpec::orthogonal(n, q, None)));
            }
            for n in [2u32, 4, 6, 8, 10] {
                for eta in [Sign::Plus, Sign::Minus] {
                    for t in [GroupSpec::orthogonal(n, q, Some(eta)), GroupSpec::omega(n, q, Some(eta))] {
                        if let Ok(s) = validate(&t) {
                            out.push(s);
                        }
                    }
                }
            }
            for fam in [Family::G2, Family::F4, Family::E7, Family::E8, Family::TriD4] {
                out.push(v(&GroupSpec::exceptional(fam, q, None)));
            }
            out.push(v(&GroupSpec::exceptional(Family::E6, q, Some(Sign::Plus))));
            out.push(v(&GroupSpec::exceptional(Family::E6, q, Some(Sign::Minus))));
            out.push(v(&GroupSpec::gl2(q, Sign::Plus)));
            out.push(v(&GroupSpec::gl2(q, Sign::Minus)));
        }
    }
    out.push(GroupSpec::parse_valid("2G2(27)").unwrap());
    out.push(GroupSpec::parse_valid("2G2(243)").unwrap());
    for n in 2..=12 {
        out.push(v(&GroupSpec::sym(n)));
        if n >= 5 {
            out.push(v(&GroupSpec::alt(n)));
        }
    }
    out
}

#[test]
fn factored_order_matches_direct_product() {
    for spec in sample_specs() {
        let o = order(&spec);
        assert_eq!(o.order.value(), &order_value(&spec), "{spec}");
        assert!(o.order.value() > &BigUint::from(1u32), "{spec}");
    }
}

#[test]
fn canonical_text_round_trips() {
    for spec in sample_specs() {
        let text = spec.to_string();
        let back = GroupSpec::parse_valid(&text).unwrap();
        assert_eq!(back.without_aliases(), spec.without_aliases(), "{text}");
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GroupSpec>(&json).unwrap(), spec);
    }
}

#[test]
fn isomorphic_orders_agree() {
    for q in [5u64, 7, 9, 11, 13] {
        let o = |s: GroupSpec| order_value(&s);
        assert_eq!(o(GroupSpec::psl(2, q, Sign::Plus)), o(GroupSpec::omega(3, q, None)));
        assert_eq!(o(GroupSpec::psp(4, q)), o(GroupSpec::omega(5, q, None)));
        for eta in [Sign::Plus, Sign::Minus] {
            assert_eq!(o(GroupSpec::psl(4, q, eta)), o(GroupSpec::orthogonal(6, q, Some(eta))));
        }
        assert_eq!(o(GroupSpec::psl(2, q * q, Sign::Plus)), o(GroupSpec::omega(4, q, Some(Sign::Minus))));
    }
}

#[test]
fn pi_parts_match_closed_forms() {
    // |SL_n^eta(q)|_r = (∏_{i=1..n}(q^i - eta^i))_r / (q - eta)_r for r ≠ p
    for q in [3u64, 5, 7, 9, 11, 13] {
        for n in 2..=8u32 {
            for eta in [Sign::Plus, Sign::Minus] {
                let spec = v(&GroupSpec::sl(n, q, eta));
                let ord = order(&spec).order;
                for r in [2u64, 3, 5, 7, 11, 13] {
                    if q % r == 0 {
                        continue;
                    }
                    let full = r_part_product(q, n as u64, r, eta).unwrap();
                    let lead = r_part_product(q, 1, r, eta).unwrap();
                    let expect = full / lead;
                    assert_eq!(pi_part(ord.value(), &PrimeSet::of(&[r])), expect, "SL({n},{q},{eta}) r={r}");
                }
            }
        }
        for m in 1..=4u64 {
            let spec = v(&GroupSpec::sp(2 * m as u32, q));
            let ord = order(&spec).order;
            for r in [2u64, 3, 5, 7] {
                if q % r == 0 {
                    continue;
                }
                // ∏ (q^{2i} - 1) = ∏ over the field q^2 of ((q^2)^i - 1)
                let expect = r_part_product(q * q, m, r, Sign::Plus).unwrap();
                assert_eq!(pi_part(ord.value(), &PrimeSet::of(&[r])), expect, "Sp({},{q}) r={r}", 2 * m);
            }
        }
    }
}

proptest! {
    #[test]
    fn linear_center_divisor(n in 2u32..7, qi in 0usize..8, minus in any::<bool>()) {
        let q = [4u64, 5, 7, 8, 9, 11, 13, 16][qi];
        let eta = if minus { Sign::Minus } else { Sign::Plus };
        prop_assume!(validate(&GroupSpec::psl(n, q, eta)).is_ok());
        let simple = order(&v(&GroupSpec::psl(n, q, eta)));
        let iso = order(&v(&GroupSpec::sl(n, q, eta)));
        let ratio = iso.order.value() / simple.order.value();
        prop_assert_eq!(ratio, BigUint::from(simple.center_divisor));
    }
}
