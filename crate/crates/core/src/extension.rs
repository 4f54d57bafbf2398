//! Class counts for wreath-type extensions, plus a Burnside orbit counter
//! used to check them.

use crate::arith::is_prime_u64;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

pub const BURNSIDE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("class count must be positive")]
    ZeroClassCount,
    #[error("generated group exceeds {0} elements")]
    BudgetExceeded(usize),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

/// Either a prime top (cyclic wreath) or an orbit count (Hall top).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreathQuery {
    Cyclic { k: u64, p: u64 },
    Orbits { k: u64, t: u32 },
}

impl WreathQuery {
    pub fn evaluate(self) -> Result<BigUint, ExtensionError> {
        match self {
            WreathQuery::Cyclic { k, p } => kpi_wreath_cyclic(k, p),
            WreathQuery::Orbits { k, t } => kpi_wreath_orbits(k, t),
        }
    }
}

/// `(k^p + (p-1)k) / p`: Hall classes of `L wr C_p` when L has k classes and
/// p lies outside π.
pub fn kpi_wreath_cyclic(k: u64, p: u64) -> Result<BigUint, ExtensionError> {
    if !is_prime_u64(p) {
        return Err(ExtensionError::NotPrime(p));
    }
    if k == 0 {
        return Err(ExtensionError::ZeroClassCount);
    }
    let p32 = u32::try_from(p).map_err(|_| ExtensionError::NotPrime(p))?;
    let numerator = BigUint::from(k).pow(p32) + BigUint::from(p - 1) * k;
    assert!(
        (&numerator % p).is_zero(),
        "k^p + (p-1)k is divisible by p (Fermat)"
    );
    Ok(numerator / p)
}

/// `k^t`: Hall classes of `L wr M` with a Hall top having t orbits.
pub fn kpi_wreath_orbits(k: u64, t: u32) -> Result<BigUint, ExtensionError> {
    if k == 0 {
        return Err(ExtensionError::ZeroClassCount);
    }
    Ok(BigUint::from(k).pow(t))
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // apply b first, then a
    b.iter().map(|&x| a[x]).collect()
}

fn cycle_count(perm: &[usize]) -> u32 {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

/// Closure of the generators as a set of permutations of `0..n`.
pub fn generate_permutation_group(
    n: usize,
    gens: &[Vec<usize>],
    budget: usize,
) -> Result<Vec<Vec<usize>>, ExtensionError> {
    for g in gens {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        if g.len() != n || sorted != (0..n).collect::<Vec<_>>() {
            return Err(ExtensionError::BadPermutation(format!("{g:?} on {n} points")));
        }
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut order = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Err(ExtensionError::BudgetExceeded(budget));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// Orbits of the generated group on k-colourings of `n` points, by summing
/// `k^cycles(g)` over the whole group.
pub fn burnside_orbits(k: u64, n: usize, gens: &[Vec<usize>]) -> Result<BigUint, ExtensionError> {
    if k == 0 {
        return Err(ExtensionError::ZeroClassCount);
    }
    let group = generate_permutation_group(n, gens, BURNSIDE_BUDGET)?;
    let kb = BigUint::from(k);
    let total: BigUint = group.iter().map(|g| kb.pow(cycle_count(g))).sum();
    let size = BigUint::from(group.len());
    debug_assert!((&total % &size).is_zero());
    Ok(total / size)
}

/// The cycle `0 -> 1 -> ... -> p-1 -> 0`.
pub fn cycle_permutation(p: usize) -> Vec<usize> {
    (0..p).map(|i| (i + 1) % p).collect()
}

/// Convenience: Burnside count for a single p-cycle, as a u64.
pub fn burnside_cyclic(k: u64, p: usize) -> Result<u64, ExtensionError> {
    burnside_orbits(k, p, &[cycle_permutation(p)]).map(|v| v.to_u64().expect("small"))
}
