//! Parameter sweeps over simple groups and the bound checks run on them.

use crate::arith::{pi_part, prime_power, PrimeSet, Sign};
use crate::classify::{classify, regime_bound, report_invariants, HallReport, KPi, Regime};
use crate::groups::{validate, Family, GroupSpec, SPORADICS};
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::BTreeSet;

/// Cells of a sweep: every simple group in the listed families with
/// q ≤ `q_max` and classical degree ≤ `n_max`, crossed with every nonempty
/// subset of `primes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepGrid {
    pub families: Vec<Family>,
    pub q_max: u64,
    pub n_max: u32,
    pub primes: Vec<u64>,
    /// Keep only π containing 2 and 3.
    pub require_two_three: bool,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            families: vec![
                Family::Alt,
                Family::Sporadic,
                Family::LinearUnitary,
                Family::Symplectic,
                Family::Orthogonal,
                Family::G2,
                Family::F4,
                Family::E6,
                Family::E7,
                Family::E8,
                Family::TriD4,
                Family::TwoG2,
            ],
            q_max: 50,
            n_max: 12,
            primes: vec![2, 3, 5, 7],
            require_two_three: false,
        }
    }
}

fn field_orders(q_max: u64) -> Vec<u64> {
    (2..=q_max).filter(|&q| prime_power(q).is_some()).collect()
}

impl SweepGrid {
    pub fn empty() -> Self {
        SweepGrid {
            families: Vec::new(),
            ..Self::default()
        }
    }

    /// Candidate descriptions before validation, in a fixed order.
    fn candidates(&self) -> Vec<GroupSpec> {
        let qs = field_orders(self.q_max);
        let odd: Vec<u64> = qs.iter().copied().filter(|q| q % 2 == 1).collect();
        let mut out = Vec::new();
        for &family in &self.families {
            match family {
                Family::Alt => out.extend((5..=self.n_max.max(4)).map(GroupSpec::alt)),
                Family::Sym => out.extend((2..=self.n_max).map(GroupSpec::sym)),
                Family::Sporadic => out.extend(SPORADICS.iter().map(|&s| GroupSpec::sporadic(s))),
                Family::LinearUnitary => {
                    for n in 2..=self.n_max {
                        for &q in &qs {
                            out.push(GroupSpec::psl(n, q, Sign::Plus));
                            if n >= 3 {
                                out.push(GroupSpec::psl(n, q, Sign::Minus));
                            }
                        }
                    }
                }
                Family::Symplectic => {
                    for n in (4..=self.n_max).step_by(2) {
                        out.extend(odd.iter().map(|&q| GroupSpec::psp(n, q)));
                    }
                }
                Family::Orthogonal => {
                    for n in 7..=self.n_max {
                        for &q in &qs {
                            if n % 2 == 1 {
                                out.push(GroupSpec::orthogonal(n, q, None));
                            } else {
                                out.push(GroupSpec::orthogonal(n, q, Some(Sign::Plus)));
                                out.push(GroupSpec::orthogonal(n, q, Some(Sign::Minus)));
                            }
                        }
                    }
                }
                Family::E6 => {
                    for &q in &odd {
                        out.push(GroupSpec::exceptional(Family::E6, q, Some(Sign::Plus)));
                        out.push(GroupSpec::exceptional(Family::E6, q, Some(Sign::Minus)));
                    }
                }
                Family::TwoG2 => {
                    out.extend(qs.iter().filter(|&&q| q == 27).map(|&q| GroupSpec::exceptional(family, q, None)));
                }
                f => out.extend(odd.iter().map(|&q| GroupSpec::exceptional(f, q, None))),
            }
        }
        out
    }

    /// Valid, pairwise distinct groups of the grid, plus the rejected
    /// candidates with the reason.
    pub fn specs(&self) -> (Vec<GroupSpec>, Vec<(String, String)>) {
        let mut seen = BTreeSet::new();
        let mut specs = Vec::new();
        let mut skipped = Vec::new();
        for c in self.candidates() {
            match validate(&c) {
                Ok(s) => {
                    if seen.insert(s.without_aliases().to_string()) {
                        specs.push(s);
                    }
                }
                Err(e) => skipped.push((c.to_string(), e.to_string())),
            }
        }
        (specs, skipped)
    }

    pub fn pis(&self) -> Vec<PrimeSet> {
        let n = self.primes.len();
        (1u32..(1 << n))
            .map(|mask| {
                let chosen: Vec<u64> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.primes[i]).collect();
                PrimeSet::of(&chosen)
            })
            .filter(|pi| !self.require_two_three || (pi.contains(2) && pi.contains(3)))
            .collect()
    }
}

/// One cell of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub spec: String,
    pub pi: String,
    pub regime: String,
    pub e_pi: String,
    pub k_pi: String,
    pub c_pi: String,
    pub d_pi: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<(String, String)>,
    pub violations: usize,
}

/// Whether PSp_{2n}(q) meets the arithmetic that allows nine classes.
pub fn nine_class_conditions(spec: &GroupSpec, pi: &PrimeSet) -> bool {
    if spec.family != Family::Symplectic {
        return false;
    }
    let n = spec.degree() / 2;
    let q = spec.q();
    let sq = BigUint::from(q) * q - 1u32;
    let inter = pi.intersection(&crate::groups::prime_spectrum(spec));
    let sq_primes = crate::arith::factorize(&sq).primes();
    let part = pi_part(&sq, pi);
    let a = (n == 5 || n == 7) && inter.is(&[2, 3]) && inter.is_subset(&sq_primes) && part == BigUint::from(48u32);
    let b = n == 7 && inter.is(&[2, 3, 5]) && inter.is_subset(&sq_primes) && part == BigUint::from(120u32);
    a || b
}

/// Bound checks for one report: the regime set, the π-number property
/// and where nine classes may occur, on top of the report's own invariants.
pub fn check_bounds(r: &HallReport) -> Vec<String> {
    let mut bad = report_invariants(r);
    let allowed = match r.scope_tag {
        Regime::Whole | Regime::Sylow => vec![1],
        Regime::Cross | Regime::Defining => regime_bound(Regime::Cross),
        other => regime_bound(other),
    };
    match &r.k_pi {
        KPi::Exact(k) => {
            if !allowed.contains(k) {
                bad.push(format!("k_π = {k} outside {allowed:?}"));
            }
            if *k >= 1 {
                let kb = BigUint::from(*k);
                if pi_part(&kb, &r.pi) != kb {
                    bad.push(format!("k_π = {k} is not a π-number"));
                }
            }
            if *k == 9 && !nine_class_conditions(&r.spec, &r.pi) {
                bad.push("k_π = 9 outside the symplectic nine-class conditions".to_string());
            }
        }
        KPi::Bound(b) => {
            if b.iter().any(|x| !allowed.contains(x)) {
                bad.push(format!("bound {b:?} not within {allowed:?}"));
            }
        }
    }
    bad
}

fn row(r: &HallReport, violations: Vec<String>) -> SweepRow {
    SweepRow {
        spec: r.spec.to_string(),
        pi: r.pi.braces(),
        regime: r.scope_tag.to_string(),
        e_pi: r.e_pi.to_string(),
        k_pi: r.k_pi.to_string(),
        c_pi: r.c_pi.to_string(),
        d_pi: r.d_pi.to_string(),
        violations,
    }
}

/// Classifies every cell and checks the bounds. Cells come out in grid order.
pub fn run_sweep(grid: &SweepGrid) -> SweepOutcome {
    let (specs, mut skipped) = grid.specs();
    let pis = grid.pis();
    let mut rows = Vec::new();
    let mut violations = 0;
    for spec in &specs {
        for pi in &pis {
            match classify(spec, pi) {
                Ok(r) => {
                    let bad = check_bounds(&r);
                    violations += usize::from(!bad.is_empty());
                    rows.push(row(&r, bad));
                }
                Err(e) => skipped.push((format!("{spec} / {}", pi.braces()), e.to_string())),
            }
        }
    }
    SweepOutcome {
        rows,
        skipped,
        violations,
    }
}
