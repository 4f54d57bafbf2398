use super::{Family, GroupSpec, Variant};
use crate::arith::{factorize, factorize_u64, gcd_u64, FactoredInt, Sign};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOrder {
    pub order: FactoredInt,
    /// Which order formula produced the value.
    pub formula_tag: &'static str,
    /// Divisor applied to the isometry group to reach this group (1 if none).
    pub center_divisor: u64,
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Φ_d(q), evaluated exactly.
pub fn cyclotomic_value(q: u64, d: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let qb = BigUint::from(q);
    for k in 1..=d {
        if d % k != 0 {
            continue;
        }
        let term = qb.pow((d / k) as u32) - 1u32;
        match mobius(k) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

fn cyclotomic_factored(q: u64, d: u64) -> FactoredInt {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), FactoredInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache lock").get(&(q, d)) {
        return hit.clone();
    }
    let f = factorize(&cyclotomic_value(q, d));
    cache.lock().expect("cache lock").insert((q, d), f.clone());
    f
}

/// Factored `q^i - s^i`, assembled from cyclotomic pieces.
pub fn q_pow_minus_factored(q: u64, i: u64, s: Sign) -> FactoredInt {
    q_pow_offset_factored(q, i, s.pow(i))
}

/// Factored `q^i - s` (note: `s`, not `s^i`).
fn q_pow_offset_factored(q: u64, i: u64, s: Sign) -> FactoredInt {
    let plus_one = s == Sign::Minus;
    let mut out = FactoredInt::one();
    if plus_one {
        // q^i + 1 = ∏ Φ_d(q) over d | 2i with d ∤ i
        for d in 1..=2 * i {
            if (2 * i) % d == 0 && i % d != 0 {
                out = out.mul(&cyclotomic_factored(q, d));
            }
        }
    } else {
        for d in 1..=i {
            if i % d == 0 {
                out = out.mul(&cyclotomic_factored(q, d));
            }
        }
    }
    out
}

fn q_power(spec: &GroupSpec, k: u32) -> FactoredInt {
    let fq = spec.q.expect("validated Lie-type spec");
    FactoredInt::from_factors([(fq.p, fq.a * k)])
}

fn divide(f: FactoredInt, d: u64) -> FactoredInt {
    f.div_exact(&factorize_u64(d)).expect("centre order divides group order")
}

fn factorial_factored(n: u64) -> FactoredInt {
    (2..=n).fold(FactoredInt::one(), |acc, i| acc.mul(&factorize_u64(i)))
}

/// Exact factored order of a validated spec.
pub fn order(spec: &GroupSpec) -> GroupOrder {
    let q = spec.q();
    let n = spec.degree() as u64;
    let eta = spec.eta.unwrap_or(Sign::Plus);
    let prod = |idx: &mut dyn Iterator<Item = u64>, s: Sign| {
        idx.fold(FactoredInt::one(), |acc, i| acc.mul(&q_pow_minus_factored(q, i, s)))
    };
    let done = |order: FactoredInt, tag: &'static str, center: u64| GroupOrder {
        order,
        formula_tag: tag,
        center_divisor: center,
    };
    match spec.family {
        Family::Sym => done(factorial_factored(n), "n!", 1),
        Family::Alt => done(divide(factorial_factored(n), 2), "n!/2", 1),
        Family::Sporadic => done(
            spec.sporadic.expect("sporadic name").factored_order(),
            "sporadic table",
            1,
        ),
        Family::LinearUnitary => {
            let base = q_power(spec, (n * (n - 1) / 2) as u32).mul(&prod(&mut (2..=n), eta));
            match spec.variant {
                Variant::Isometry => done(base, "q^(n(n-1)/2) prod_{i=2..n}(q^i - eta^i)", 1),
                Variant::General => done(
                    base.mul(&q_pow_minus_factored(q, 1, eta)),
                    "(q - eta) |SL_2^eta(q)|",
                    1,
                ),
                Variant::Simple => {
                    let c = gcd_u64(n, eta.q_minus(q));
                    done(divide(base, c), "|SL_n^eta(q)| / (n, q - eta)", c)
                }
            }
        }
        Family::Symplectic => {
            let m = n / 2;
            let base = q_power(spec, (m * m) as u32).mul(&prod(&mut (1..=m).map(|i| 2 * i), Sign::Plus));
            if spec.variant == Variant::Simple {
                let c = gcd_u64(2, q - 1);
                done(divide(base, c), "|Sp_2m(q)| / (2, q - 1)", c)
            } else {
                done(base, "q^(m^2) prod_{i=1..m}(q^(2i) - 1)", 1)
            }
        }
        Family::Orthogonal => orthogonal_order(spec, n, q, eta),
        Family::G2 => done(
            q_power(spec, 6).mul(&prod(&mut [2u64, 6].into_iter(), Sign::Plus)),
            "q^6 (q^6 - 1)(q^2 - 1)",
            1,
        ),
        Family::F4 => done(
            q_power(spec, 24).mul(&prod(&mut [2u64, 6, 8, 12].into_iter(), Sign::Plus)),
            "q^24 (q^2 - 1)(q^6 - 1)(q^8 - 1)(q^12 - 1)",
            1,
        ),
        Family::E6 => {
            let base = q_power(spec, 36).mul(&prod(&mut [2u64, 5, 6, 8, 9, 12].into_iter(), eta));
            let c = gcd_u64(3, eta.q_minus(q));
            done(divide(base, c), "q^36 prod(q^i - eta^i) / (3, q - eta)", c)
        }
        Family::E7 => {
            let base = q_power(spec, 63)
                .mul(&prod(&mut [2u64, 6, 8, 10, 12, 14, 18].into_iter(), Sign::Plus));
            let c = gcd_u64(2, q - 1);
            done(divide(base, c), "q^63 prod(q^i - 1) / (2, q - 1)", c)
        }
        Family::E8 => done(
            q_power(spec, 120)
                .mul(&prod(&mut [2u64, 8, 12, 14, 18, 20, 24, 30].into_iter(), Sign::Plus)),
            "q^120 prod(q^i - 1)",
            1,
        ),
        Family::TriD4 => {
            // q^8 + q^4 + 1 = Φ3 Φ6 Φ12
            let tri = [3u64, 6, 12]
                .iter()
                .fold(FactoredInt::one(), |acc, &d| acc.mul(&cyclotomic_factored(q, d)));
            done(
                q_power(spec, 12)
                    .mul(&tri)
                    .mul(&prod(&mut [2u64, 6].into_iter(), Sign::Plus)),
                "q^12 (q^8 + q^4 + 1)(q^6 - 1)(q^2 - 1)",
                1,
            )
        }
        Family::TwoG2 => done(
            q_power(spec, 3)
                .mul(&q_pow_minus_factored(q, 3, Sign::Minus))
                .mul(&q_pow_minus_factored(q, 1, Sign::Plus)),
            "q^3 (q^3 + 1)(q - 1)",
            1,
        ),
    }
}

fn orthogonal_order(spec: &GroupSpec, n: u64, q: u64, eta: Sign) -> GroupOrder {
    let odd_q = q % 2 == 1;
    let m = n / 2;
    let squares = |k: u64| {
        (1..=k).fold(FactoredInt::one(), |acc, i| {
            acc.mul(&q_pow_minus_factored(q, 2 * i, Sign::Plus))
        })
    };
    if n % 2 == 1 {
        let base = q_power(spec, (m * m) as u32).mul(&squares(m));
        let order = if odd_q { divide(base, 2) } else { base };
        return GroupOrder {
            order,
            formula_tag: "q^(m^2) prod_{i=1..m}(q^(2i) - 1) / (2, q - 1)",
            center_divisor: 1,
        };
    }
    if n == 2 {
        let c = gcd_u64(2, q - 1);
        return GroupOrder {
            order: divide(q_pow_minus_factored(q, 1, eta), c),
            formula_tag: "(q - eta) / (2, q - 1)",
            center_divisor: 1,
        };
    }
    let so = q_power(spec, (m * (m - 1)) as u32)
        .mul(&q_pow_offset_factored(q, m, eta))
        .mul(&squares(m - 1));
    if !odd_q {
        return GroupOrder {
            order: so,
            formula_tag: "q^(m(m-1)) (q^m - eta) prod_{i<m}(q^(2i) - 1)",
            center_divisor: 1,
        };
    }
    if spec.variant == Variant::Simple {
        let qm = BigUint::from(q).pow(m as u32);
        let qm_minus = match eta {
            Sign::Plus => qm - 1u32,
            Sign::Minus => qm + 1u32,
        };
        let c = qm_minus.gcd(&BigUint::from(4u32));
        let c = u64::try_from(c).expect("small gcd");
        GroupOrder {
            order: divide(so, c),
            formula_tag: "|SO_2m^eta(q)| / (4, q^m - eta)",
            center_divisor: c / 2,
        }
    } else {
        GroupOrder {
            order: divide(so, 2),
            formula_tag: "|SO_2m^eta(q)| / 2",
            center_divisor: 1,
        }
    }
}

/// The same order computed directly from the defining products, without
/// factorisation; used to cross-check [`order`].
pub fn order_value(spec: &GroupSpec) -> BigUint {
    let q = BigUint::from(spec.q());
    let qv = spec.q();
    let n = spec.degree() as u64;
    let eta = spec.eta.unwrap_or(Sign::Plus);
    let pm = |i: u64, s: Sign| -> BigUint {
        let v = q.pow(i as u32);
        if s.pow(i) == Sign::Plus {
            v - 1u32
        } else {
            v + 1u32
        }
    };
    let qp = |k: u64| q.pow(k as u32);
    let fact = |k: u64| (1..=k).fold(BigUint::one(), |acc, i| acc * i);
    match spec.family {
        Family::Sym => fact(n),
        Family::Alt => fact(n) / 2u32,
        Family::Sporadic => spec.sporadic.expect("name").order_value(),
        Family::LinearUnitary => {
            let mut v = qp(n * (n - 1) / 2);
            for i in 2..=n {
                v *= pm(i, eta);
            }
            match spec.variant {
                Variant::Isometry => v,
                Variant::General => v * pm(1, eta),
                Variant::Simple => v / gcd_u64(n, eta.q_minus(qv)),
            }
        }
        Family::Symplectic => {
            let m = n / 2;
            let mut v = qp(m * m);
            for i in 1..=m {
                v *= pm(2 * i, Sign::Plus);
            }
            if spec.variant == Variant::Simple {
                v / gcd_u64(2, qv - 1)
            } else {
                v
            }
        }
        Family::Orthogonal => {
            let m = n / 2;
            let odd_q = qv % 2 == 1;
            if n % 2 == 1 {
                let mut v = qp(m * m);
                for i in 1..=m {
                    v *= pm(2 * i, Sign::Plus);
                }
                return if odd_q { v / 2u32 } else { v };
            }
            if n == 2 {
                return pm(1, eta) / gcd_u64(2, qv - 1);
            }
            let mut so = qp(m * (m - 1)) * (if eta == Sign::Plus { qp(m) - 1u32 } else { qp(m) + 1u32 });
            for i in 1..m {
                so *= pm(2 * i, Sign::Plus);
            }
            if !odd_q {
                so
            } else if spec.variant == Variant::Simple {
                let qm = if eta == Sign::Plus { qp(m) - 1u32 } else { qp(m) + 1u32 };
                let c = qm.gcd(&BigUint::from(4u32));
                so / c
            } else {
                so / 2u32
            }
        }
        Family::G2 => qp(6) * pm(6, Sign::Plus) * pm(2, Sign::Plus),
        Family::F4 => qp(24) * pm(2, Sign::Plus) * pm(6, Sign::Plus) * pm(8, Sign::Plus) * pm(12, Sign::Plus),
        Family::E6 => {
            let mut v = qp(36);
            for i in [2, 5, 6, 8, 9, 12] {
                v *= pm(i, eta);
            }
            v / gcd_u64(3, eta.q_minus(qv))
        }
        Family::E7 => {
            let mut v = qp(63);
            for i in [2, 6, 8, 10, 12, 14, 18] {
                v *= pm(i, Sign::Plus);
            }
            v / gcd_u64(2, qv - 1)
        }
        Family::E8 => {
            let mut v = qp(120);
            for i in [2, 8, 12, 14, 18, 20, 24, 30] {
                v *= pm(i, Sign::Plus);
            }
            v
        }
        Family::TriD4 => qp(12) * (qp(8) + qp(4) + 1u32) * pm(6, Sign::Plus) * pm(2, Sign::Plus),
        Family::TwoG2 => qp(3) * (qp(3) + 1u32) * (q.clone() - 1u32),
    }
}
