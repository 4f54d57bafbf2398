use super::{is_prime, ArithError};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A finite set of primes, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: BTreeSet<BigUint>,
}

impl PrimeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I, T>(items: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut primes = BTreeSet::new();
        for p in items {
            let p = p.into();
            if !is_prime(&p) {
                return Err(ArithError::NotPrime(p.to_string()));
            }
            primes.insert(p);
        }
        Ok(PrimeSet { primes })
    }

    /// Builds a set from values already known to be prime.
    pub(crate) fn from_trusted(primes: BTreeSet<BigUint>) -> Self {
        PrimeSet { primes }
    }

    pub fn of(items: &[u64]) -> Self {
        Self::new(items.iter().copied()).expect("primes")
    }

    /// Parses `2,3,5` (braces and spaces are ignored).
    pub fn parse(text: &str) -> Result<Self, ArithError> {
        let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
        if trimmed.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut items = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            let v: BigUint = part
                .parse()
                .map_err(|_| ArithError::Parse(format!("`{part}` is not an integer")))?;
            items.push(v);
        }
        Self::new(items)
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&BigUint::from(p))
    }

    pub fn contains_big(&self, p: &BigUint) -> bool {
        self.primes.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigUint> {
        self.primes.iter()
    }

    /// Members that fit in a machine word.
    pub fn small(&self) -> Vec<u64> {
        self.primes.iter().filter_map(|p| p.to_u64()).collect()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.primes.is_subset(&other.primes)
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet {
            primes: self.primes.intersection(&other.primes).cloned().collect(),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet {
            primes: self.primes.union(&other.primes).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet {
            primes: self.primes.difference(&other.primes).cloned().collect(),
        }
    }

    pub fn insert(&mut self, p: u64) {
        assert!(super::is_prime_u64(p), "{p} is not prime");
        self.primes.insert(BigUint::from(p));
    }

    /// True when the set equals exactly the given small primes.
    pub fn is(&self, items: &[u64]) -> bool {
        self.len() == items.len() && items.iter().all(|&p| self.contains(p))
    }

    /// `{2,3}` style rendering.
    pub fn braces(&self) -> String {
        format!("{{{self}}}")
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Member {
    Small(u64),
    Big(String),
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.primes.iter().map(|p| match p.to_u64() {
            Some(v) => Member::Small(v),
            None => Member::Big(p.to_string()),
        }))
    }
}

impl<'de> Deserialize<'de> for PrimeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<Member> = Vec::deserialize(d)?;
        let items: Vec<String> = raw
            .into_iter()
            .map(|m| match m {
                Member::Small(v) => v.to_string(),
                Member::Big(s) => s,
            })
            .collect();
        PrimeSet::parse(&items.join(",")).map_err(serde::de::Error::custom)
    }
}
