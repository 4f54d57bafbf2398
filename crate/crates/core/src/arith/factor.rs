use super::PrimeSet;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

const TRIAL_LIMIT: u64 = 1_000_000;
const WITNESSES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES[..12] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES[..12] {
        let mut x = super::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with a fixed witness set; exact below 2⁶⁴.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A positive integer together with its prime factorisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInt {
    value: BigUint,
    factors: BTreeMap<BigUint, u32>,
}

impl FactoredInt {
    pub fn one() -> Self {
        FactoredInt {
            value: BigUint::one(),
            factors: BTreeMap::new(),
        }
    }

    /// Builds from `(prime, exponent)` pairs; zero exponents are dropped.
    pub fn from_factors<I, P>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (P, u32)>,
        P: Into<BigUint>,
    {
        let mut out = Self::one();
        for (p, e) in pairs {
            if e > 0 {
                let p = p.into();
                out.value *= p.pow(e);
                *out.factors.entry(p).or_insert(0) += e;
            }
        }
        out
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, u32> {
        &self.factors
    }

    /// Factors with primes that fit in a machine word.
    pub fn factors_u64(&self) -> Vec<(u64, u32)> {
        self.factors
            .iter()
            .map(|(p, &e)| (p.to_u64().expect("prime fits u64"), e))
            .collect()
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&BigUint::from(p)).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> PrimeSet {
        PrimeSet::from_trusted(self.factors.keys().cloned().collect::<BTreeSet<_>>())
    }

    pub fn mul(&self, other: &FactoredInt) -> FactoredInt {
        let mut out = self.clone();
        out.value *= &other.value;
        for (p, e) in &other.factors {
            *out.factors.entry(p.clone()).or_insert(0) += e;
        }
        out
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &FactoredInt) -> Option<FactoredInt> {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            let have = factors.get_mut(p)?;
            if *have < *e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                factors.remove(p);
            }
        }
        Some(FactoredInt {
            value: &self.value / &other.value,
            factors,
        })
    }

    pub fn pow(&self, k: u32) -> FactoredInt {
        FactoredInt {
            value: self.value.pow(k),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    pub fn pi_part(&self, pi: &PrimeSet) -> FactoredInt {
        FactoredInt::from_factors(
            self.factors
                .iter()
                .filter(|(p, _)| pi.contains_big(p))
                .map(|(p, e)| (p.clone(), *e)),
        )
    }

    pub fn is_pi_number(&self, pi: &PrimeSet) -> bool {
        self.factors.keys().all(|p| pi.contains_big(p))
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

// Brent's variant of Pollard rho; `n` odd composite.
fn rho_u64(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let mut g = 1;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q, m) = (BigUint::from(2u32), 1u64, one.clone(), 128u64);
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        let mut g = one.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = match n.to_u64() {
        Some(v) => BigUint::from(rho_u64(v)),
        None => rho_big(&n),
    };
    let rest = &n / &d;
    split_into(d, out);
    split_into(rest, out);
}

/// Complete factorisation: trial division below 10⁶, then Pollard rho.
pub fn factorize(n: &BigUint) -> FactoredInt {
    assert!(!n.is_zero(), "factorize(0)");
    let mut factors = BTreeMap::new();
    let mut m = n.clone();
    for &p in small_primes() {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        loop {
            let (quot, rem) = m.div_rem(&bp);
            if !rem.is_zero() {
                break;
            }
            m = quot;
            e += 1;
        }
        if e > 0 {
            factors.insert(bp, e);
        }
    }
    split_into(m, &mut factors);
    FactoredInt {
        value: n.clone(),
        factors,
    }
}

pub fn factorize_u64(n: u64) -> FactoredInt {
    factorize(&BigUint::from(n))
}
