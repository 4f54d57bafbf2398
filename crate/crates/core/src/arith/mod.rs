//! Exact number theory used by the classifiers: π-parts, multiplicative
//! orders and closed forms for the r-parts of qⁿ − ηⁿ and their products.

mod factor;
mod primeset;

pub use factor::{factorize, factorize_u64, is_prime, is_prime_u64, FactoredInt};
pub use primeset::PrimeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{q} and {r} are not coprime")]
    NotCoprime { q: u64, r: u64 },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("expected an odd integer, got {0}")]
    EvenArgument(u64),
    #[error("expected a positive integer")]
    Zero,
    #[error("cannot parse prime set: {0}")]
    Parse(String),
}

/// A sign ±1. Rendered as `+` or `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn pow(self, n: u64) -> Sign {
        if self == Sign::Minus && n % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// `q - self` as a non-negative integer (q ≥ 2).
    pub fn q_minus(self, q: u64) -> u64 {
        match self {
            Sign::Plus => q - 1,
            Sign::Minus => q + 1,
        }
    }

    /// `q + self`.
    pub fn q_plus(self, q: u64) -> u64 {
        (-self).q_minus(q)
    }

    /// Residue of `self` modulo `m`.
    pub fn residue(self, m: u64) -> u64 {
        match self {
            Sign::Plus => 1 % m,
            Sign::Minus => m - 1,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Exponent of the prime `r` in `n` (n > 0).
pub fn valuation(n: &BigUint, r: u64) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let r = BigUint::from(r);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&r);
        if !rem.is_zero() {
            return v;
        }
        n = quot;
        v += 1;
    }
}

pub fn valuation_u64(mut n: u64, r: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % r == 0 {
        n /= r;
        v += 1;
    }
    v
}

/// The largest divisor of `n` whose prime divisors all lie in `pi`.
pub fn pi_part(n: &BigUint, pi: &PrimeSet) -> BigUint {
    let mut out = BigUint::one();
    if n.is_zero() {
        return out;
    }
    for r in pi.iter() {
        let mut m = n.clone();
        loop {
            let (quot, rem) = m.div_rem(r);
            if !rem.is_zero() {
                break;
            }
            out *= r;
            m = quot;
        }
    }
    out
}

pub fn pi_part_u64(n: u64, pi: &PrimeSet) -> u64 {
    pi_part(&BigUint::from(n), pi)
        .to_u64()
        .expect("divisor of a u64 fits in u64")
}

/// `r^v(n)`, the r-part of `n`.
pub fn r_part(n: &BigUint, r: u64) -> BigUint {
    BigUint::from(r).pow(valuation(n, r))
}

/// Multiplicative order of `q` modulo `r`. For `r = 2` this is 1 when
/// q ≡ 1 (mod 4) and 2 otherwise.
pub fn mult_order(q: u64, r: u64) -> Result<u64, ArithError> {
    if !is_prime_u64(r) {
        return Err(ArithError::NotPrime(r.to_string()));
    }
    if q % r == 0 {
        return Err(ArithError::NotCoprime { q, r });
    }
    if r == 2 {
        return Ok(if q % 4 == 1 { 1 } else { 2 });
    }
    let qr = q % r;
    let mut m = r - 1;
    for (p, _) in factorize_u64(r - 1).factors_u64() {
        while m % p == 0 && pow_mod(qr, m / p, r) == 1 {
            m /= p;
        }
    }
    Ok(m)
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn e_star(e: u64) -> u64 {
    assert!(e >= 1, "e must be positive");
    if e % 2 == 1 {
        2 * e
    } else if e % 4 == 0 {
        e
    } else {
        e / 2
    }
}

fn check_coprime(q: u64, r: u64) -> Result<(), ArithError> {
    if !is_prime_u64(r) {
        return Err(ArithError::NotPrime(r.to_string()));
    }
    if q % r == 0 {
        return Err(ArithError::NotCoprime { q, r });
    }
    Ok(())
}

/// `q^n - s` for a sign `s`.
pub fn q_pow_minus(q: u64, n: u64, s: Sign) -> BigUint {
    let qn = BigUint::from(q).pow(n as u32);
    match s {
        Sign::Plus => qn - 1u32,
        Sign::Minus => qn + 1u32,
    }
}

fn r_pow(r: u64, k: u32) -> BigUint {
    BigUint::from(r).pow(k)
}

fn r_part_u64(n: u64, r: u64) -> BigUint {
    r_pow(r, valuation_u64(n, r))
}

/// `(q^n - 1)_r` by the order-of-q closed form.
pub fn r_part_q_pow_minus_1(q: u64, n: u64, r: u64) -> Result<BigUint, ArithError> {
    check_coprime(q, r)?;
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let e = mult_order(q, r)?;
    if n % e == 0 {
        Ok(r_part(&q_pow_minus(q, e, Sign::Plus), r) * r_part_u64(n / e, r))
    } else {
        Ok(BigUint::from(if r == 2 { 2u32 } else { 1 }))
    }
}

/// `(q^n - η^n)_r`. For r ∈ {2, 3} the specialised formulas are used; every
/// other prime goes through [`r_part_q_pow_minus_eta_general`].
pub fn r_part_q_pow_minus_eta(q: u64, n: u64, r: u64, eta: Sign) -> Result<BigUint, ArithError> {
    check_coprime(q, r)?;
    if n == 0 {
        return Err(ArithError::Zero);
    }
    match r {
        2 => {
            let base = r_part_u64(eta.q_minus(q), 2);
            if n % 2 == 0 {
                Ok(base * r_part_u64(eta.q_plus(q), 2) * r_part_u64(n / 2, 2))
            } else {
                Ok(base)
            }
        }
        3 => {
            if q % 3 == eta.residue(3) {
                Ok(r_part_u64(eta.q_minus(q), 3) * r_part_u64(n, 3))
            } else if n % 2 == 0 {
                Ok(r_part_u64(eta.q_plus(q), 3) * r_part_u64(n / 2, 3))
            } else {
                Ok(BigUint::one())
            }
        }
        _ => r_part_q_pow_minus_eta_general(q, n, r, eta),
    }
}

/// `(q^n - η^n)_r` via the order of q and its starred variant, valid for
/// every prime r coprime to q.
pub fn r_part_q_pow_minus_eta_general(
    q: u64,
    n: u64,
    r: u64,
    eta: Sign,
) -> Result<BigUint, ArithError> {
    if eta == Sign::Plus {
        return r_part_q_pow_minus_1(q, n, r);
    }
    check_coprime(q, r)?;
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let es = e_star(mult_order(q, r)?);
    if n % es == 0 {
        let head = q_pow_minus(q, es, Sign::Minus.pow(es));
        Ok(r_part(&head, r) * r_part_u64(n / es, r))
    } else {
        Ok(BigUint::from(if r == 2 { 2u32 } else { 1 }))
    }
}

fn factorial_r_part(n: u64, r: u64) -> BigUint {
    // Legendre
    let mut v = 0u32;
    let mut k = n / r;
    while k > 0 {
        v += k as u32;
        k /= r;
    }
    r_pow(r, v)
}

/// The r-part of `∏_{i=1..n} (q^i - η^i)`.
pub fn r_part_product(q: u64, n: u64, r: u64, eta: Sign) -> Result<BigUint, ArithError> {
    check_coprime(q, r)?;
    if n == 0 {
        return Ok(BigUint::one());
    }
    let half = n / 2;
    match r {
        2 => Ok(r_part_u64(eta.q_minus(q), 2).pow(n as u32)
            * r_part_u64(eta.q_plus(q), 2).pow(half as u32)
            * factorial_r_part(half, 2)),
        3 => {
            if q % 3 == eta.residue(3) {
                Ok(r_part_u64(eta.q_minus(q), 3).pow(n as u32) * factorial_r_part(n, 3))
            } else {
                Ok(r_part_u64(eta.q_plus(q), 3).pow(half as u32) * factorial_r_part(half, 3))
            }
        }
        _ => {
            let e = mult_order(q, r)?;
            let step = if eta == Sign::Plus { e } else { e_star(e) };
            let head = r_part_q_pow_minus_eta_general(q, step, r, eta)?;
            Ok(head.pow((n / step) as u32) * factorial_r_part(n / step, r))
        }
    }
}

/// True when `((q²−1)(q⁴−1)⋯(q^{2(m−1)}−1))_r > (m!)_r`.
pub fn symmetric_dominates(q: u64, r: u64, m: u64) -> Result<bool, ArithError> {
    check_coprime(q, r)?;
    let mut lhs = BigUint::one();
    for i in 1..m {
        lhs *= r_part_q_pow_minus_1(q, 2 * i, r)?;
    }
    Ok(lhs > factorial_r_part(m, r))
}

/// ε(q) = (−1)^((q−1)/2).
pub fn epsilon(q: u64) -> Result<Sign, ArithError> {
    if q % 2 == 0 {
        return Err(ArithError::EvenArgument(q));
    }
    Ok(if q % 4 == 1 { Sign::Plus } else { Sign::Minus })
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Splits `q` as `p^a` when it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize_u64(q);
    let fs = f.factors_u64();
    if fs.len() == 1 {
        Some(fs[0])
    } else {
        None
    }
}
