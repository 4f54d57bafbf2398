use hallpi::arith::*;
use num_bigint::BigUint;
use proptest::prelude::*;

// Independent oracle: r-adic valuation by repeated division of the exact value.
fn oracle_r_part(value: &BigUint, r: u64) -> BigUint {
    let rb = BigUint::from(r);
    let mut v = value.clone();
    let mut out = BigUint::from(1u32);
    while &v % &rb == BigUint::from(0u32) {
        v /= &rb;
        out *= &rb;
    }
    out
}

fn q_pow_minus_eta(q: u64, n: u64, eta: Sign) -> BigUint {
    let qn = BigUint::from(q).pow(n as u32);
    if eta.pow(n) == Sign::Plus {
        qn - 1u32
    } else {
        qn + 1u32
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn pi_part_examples() {
    assert_eq!(pi_part(&big(48), &PrimeSet::of(&[2, 3])), big(48));
    assert_eq!(pi_part(&big(120), &PrimeSet::of(&[2, 3])), big(24));
    assert_eq!(pi_part(&big(1), &PrimeSet::of(&[2, 3, 5])), big(1));
}

#[test]
fn mult_order_examples() {
    assert_eq!(mult_order(7, 3).unwrap(), 1);
    assert_eq!(mult_order(2, 7).unwrap(), 3);
    assert_eq!(mult_order(7, 2).unwrap(), 2);
    assert_eq!(mult_order(5, 2).unwrap(), 1);
    assert!(mult_order(9, 3).is_err());
}

#[test]
fn mult_order_matches_powering() {
    for r in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        for q in 2..60u64 {
            if q % r == 0 {
                continue;
            }
            let mut m = 1;
            let mut x = q % r;
            while x != 1 {
                x = x * q % r;
                m += 1;
            }
            assert_eq!(mult_order(q, r).unwrap(), m, "q={q} r={r}");
        }
    }
}

#[test]
fn e_star_examples() {
    assert_eq!(e_star(1), 2);
    assert_eq!(e_star(4), 4);
    assert_eq!(e_star(6), 3);
}

#[test]
fn r_part_examples() {
    assert_eq!(r_part_q_pow_minus_1(7, 4, 3).unwrap(), big(3));
    assert_eq!(r_part_q_pow_minus_1(7, 1, 5).unwrap(), big(1));
    assert_eq!(r_part_q_pow_minus_1(3, 2, 2).unwrap(), big(8));
    assert!(r_part_q_pow_minus_1(9, 2, 3).is_err());

    assert_eq!(r_part_q_pow_minus_eta(5, 3, 3, Sign::Plus).unwrap(), big(1));
    assert_eq!(r_part_q_pow_minus_eta(7, 2, 2, Sign::Plus).unwrap(), big(16));
    assert_eq!(r_part_q_pow_minus_eta(5, 2, 3, Sign::Minus).unwrap(), big(3));
}

#[test]
fn r_part_product_examples() {
    assert_eq!(r_part_product(7, 2, 2, Sign::Plus).unwrap(), big(32));
    // (5 - 1)_3 * (25 - 1)_3 = 1 * 3
    assert_eq!(r_part_product(5, 2, 3, Sign::Plus).unwrap(), big(3));
    assert_eq!(r_part_product(3, 1, 2, Sign::Plus).unwrap(), big(2));
}

#[test]
fn symmetric_dominates_examples() {
    assert!(symmetric_dominates(7, 5, 3).unwrap());
    assert!(!symmetric_dominates(7, 5, 1).unwrap());
    assert!(symmetric_dominates(5, 7, 4).unwrap());
}

#[test]
fn epsilon_examples() {
    assert_eq!(epsilon(5).unwrap(), Sign::Plus);
    assert_eq!(epsilon(7).unwrap(), Sign::Minus);
    assert_eq!(epsilon(13).unwrap(), Sign::Plus);
    assert!(epsilon(4).is_err());
}

#[test]
fn factorize_examples() {
    let f = factorize_u64(168);
    assert_eq!(f.factors_u64(), vec![(2, 3), (3, 1), (7, 1)]);
    assert!(factorize_u64(1).factors().is_empty());
    assert_eq!(factorize_u64(5040).factors_u64(), vec![(2, 4), (3, 2), (5, 1), (7, 1)]);
}

#[test]
fn factorize_beyond_trial_division() {
    // products of two primes above 10^6
    let p = big(1_000_003);
    let q = big(998_244_353);
    let r = BigUint::parse_bytes(b"18446744073709551557", 10).unwrap();
    let n = &p * &q * &r;
    let f = factorize(&n);
    assert_eq!(f.value(), &n);
    assert_eq!(f.factors().len(), 3);
    assert!(f.factors().keys().all(is_prime));
    let square = &q * &q;
    assert_eq!(factorize(&square).factors().get(&q), Some(&2));
}

#[test]
fn primality_small_range() {
    let mut sieve = vec![true; 10_001];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..=100 {
        if sieve[i] {
            for j in (i * i..=10_000).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    for (n, &expect) in sieve.iter().enumerate() {
        assert_eq!(is_prime_u64(n as u64), expect, "{n}");
    }
    // strong pseudoprime to several small bases
    assert!(!is_prime_u64(3_215_031_751));
}

#[test]
fn prime_set_parsing() {
    let pi = PrimeSet::parse("5, 2,3").unwrap();
    assert_eq!(pi.to_string(), "2,3,5");
    assert!(PrimeSet::parse("2,4").is_err());
    assert!(PrimeSet::parse("2,x").is_err());
    assert_eq!(PrimeSet::parse("{2,3}").unwrap(), PrimeSet::of(&[2, 3]));
    let json = serde_json::to_string(&pi).unwrap();
    assert_eq!(json, "[2,3,5]");
    assert_eq!(serde_json::from_str::<PrimeSet>(&json).unwrap(), pi);
}

#[test]
fn closed_forms_match_direct_valuation_exhaustively() {
    for q in (3..=49u64).step_by(2) {
        for r in [2u64, 3, 5, 7, 11, 13] {
            if q % r == 0 {
                continue;
            }
            for n in 1..=12u64 {
                for eta in [Sign::Plus, Sign::Minus] {
                    let direct = oracle_r_part(&q_pow_minus_eta(q, n, eta), r);
                    let special = r_part_q_pow_minus_eta(q, n, r, eta).unwrap();
                    let general = r_part_q_pow_minus_eta_general(q, n, r, eta).unwrap();
                    assert_eq!(special, direct, "q={q} n={n} r={r} eta={eta}");
                    assert_eq!(general, direct, "general q={q} n={n} r={r} eta={eta}");
                    if eta == Sign::Plus {
                        assert_eq!(r_part_q_pow_minus_1(q, n, r).unwrap(), direct);
                    }
                    let mut prod = BigUint::from(1u32);
                    for i in 1..=n {
                        prod *= q_pow_minus_eta(q, i, eta);
                    }
                    assert_eq!(
                        r_part_product(q, n, r, eta).unwrap(),
                        oracle_r_part(&prod, r),
                        "product q={q} n={n} r={r} eta={eta}"
                    );
                }
            }
        }
    }
}

#[test]
fn symmetric_domination_holds_past_threshold() {
    for q in [5u64, 7, 9, 11, 13, 25, 27, 49] {
        for r in [3u64, 5, 7, 11, 13] {
            if q % r == 0 {
                continue;
            }
            for m in (r + 1) / 2..=14 {
                assert!(symmetric_dominates(q, r, m).unwrap(), "q={q} r={r} m={m}");
            }
        }
    }
}

proptest! {
    #[test]
    fn pi_part_multiplicative(a in 1u64..200_000, b in 1u64..200_000, mask in 1u8..16) {
        prop_assume!(gcd_u64(a, b) == 1);
        let primes: Vec<u64> = [2u64, 3, 5, 7].iter().enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        let pi = PrimeSet::of(&primes);
        let lhs = pi_part(&(big(a) * big(b)), &pi);
        prop_assert_eq!(lhs, pi_part(&big(a), &pi) * pi_part(&big(b), &pi));
    }

    #[test]
    fn pi_part_is_largest_pi_divisor(n in 1u64..1_000_000) {
        let pi = PrimeSet::of(&[2, 3]);
        let part = pi_part(&big(n), &pi);
        prop_assert_eq!(big(n) % &part, big(0));
        let co = big(n) / &part;
        prop_assert!(&co % 2u32 != big(0) && &co % 3u32 != big(0));
    }

    #[test]
    fn epsilon_multiplicative(a in 0u64..10_000, b in 0u64..10_000) {
        let (q, q2) = (2 * a + 1, 2 * b + 1);
        prop_assert_eq!(epsilon(q).unwrap() * epsilon(q2).unwrap(), epsilon(q * q2).unwrap());
    }

    #[test]
    fn factorization_reconstructs(n in 1u64..u64::MAX) {
        let f = factorize_u64(n);
        let mut prod = BigUint::from(1u32);
        for (p, e) in f.factors() {
            prop_assert!(is_prime(p));
            prop_assert!(*e >= 1);
            prod *= p.pow(*e);
        }
        prop_assert_eq!(prod, big(n));
    }

    #[test]
    fn general_identity_large_q(q in 2u64..5_000, n in 1u64..20, ri in 0usize..8) {
        let r = [2u64, 3, 5, 7, 11, 13, 17, 19][ri];
        prop_assume!(q % r != 0);
        for eta in [Sign::Plus, Sign::Minus] {
            let direct = oracle_r_part(&q_pow_minus_eta(q, n, eta), r);
            prop_assert_eq!(r_part_q_pow_minus_eta_general(q, n, r, eta).unwrap(), direct.clone());
            prop_assert_eq!(r_part_q_pow_minus_eta(q, n, r, eta).unwrap(), direct);
        }
    }
}
