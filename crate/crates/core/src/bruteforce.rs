//! Explicit small groups and exhaustive π-Hall subgroup search, used to
//! cross-check the classifier on groups small enough to enumerate.
//!
//! Matrix groups are 2×2 over a prime field; permutation groups act on
//! {0..n-1}, and PSL3(p) for p ≤ 3 acts on the points of the projective
//! plane. Elements are stored once, as packed codes, and referred to by
//! index.

use crate::arith::{factorial, is_prime_u64, pi_part_u64, PrimeSet, Sign};
use crate::classify::{HallReport, KPi, Verdict};
use crate::groups::{order, validate, Family, GroupSpec, Variant};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

pub const MAX_FIELD: u64 = 17;
pub const MAX_DEGREE: u64 = 8;
/// Largest field for the projective-plane action of PSL3.
pub const MAX_PLANE_FIELD: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("{0} is not a prime field order (prime powers are not built explicitly)")]
    NonPrimeField(u64),
    #[error("parameter {0} is outside the supported range")]
    OutOfRange(u64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no explicit construction for {0}")]
    Unsupported(String),
    #[error("built order {built} differs from the symbolic order {expected}")]
    OrderMismatch { built: usize, expected: String },
    #[error("bad generator: {0}")]
    BadGenerator(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    SL2,
    PSL2,
    GL2,
    PGL2,
    Sym,
    Alt,
    /// PSL3(p) on the p²+p+1 points of the projective plane.
    PSL3,
}

impl GroupKind {
    fn is_matrix(self) -> bool {
        matches!(self, GroupKind::SL2 | GroupKind::PSL2 | GroupKind::GL2 | GroupKind::PGL2)
    }

    /// The explicit kind realising a group description, with its parameter.
    pub fn from_spec(spec: &GroupSpec) -> Option<(GroupKind, u64)> {
        match spec.family {
            Family::Sym => Some((GroupKind::Sym, spec.n? as u64)),
            Family::Alt => Some((GroupKind::Alt, spec.n? as u64)),
            Family::LinearUnitary if spec.n == Some(2) && spec.eta != Some(Sign::Minus) => {
                let kind = match spec.variant {
                    Variant::Simple => GroupKind::PSL2,
                    Variant::Isometry => GroupKind::SL2,
                    Variant::General => GroupKind::GL2,
                };
                Some((kind, spec.q()))
            }
            // SL3 and PSL3 agree when 3 ∤ p−1, which covers p = 2, 3
            Family::LinearUnitary
                if spec.n == Some(3)
                    && spec.eta == Some(Sign::Plus)
                    && spec.variant != Variant::General
                    && (spec.q() - 1) % 3 != 0 =>
            {
                Some((GroupKind::PSL3, spec.q()))
            }
            _ => None,
        }
    }

    /// Group description with the same order, when the groups module has one.
    pub fn spec(self, param: u64) -> Option<GroupSpec> {
        let p = param;
        match self {
            GroupKind::SL2 => Some(GroupSpec::sl(2, p, Sign::Plus)),
            GroupKind::PSL2 => Some(GroupSpec::psl(2, p, Sign::Plus)),
            GroupKind::GL2 => Some(GroupSpec::gl2(p, Sign::Plus)),
            GroupKind::PGL2 => None,
            GroupKind::Sym => Some(GroupSpec::sym(param as u32)),
            GroupKind::Alt => Some(GroupSpec::alt(param as u32)),
            GroupKind::PSL3 => Some(GroupSpec::psl(3, p, Sign::Plus)),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::SL2 => "SL2",
            GroupKind::PSL2 => "PSL2",
            GroupKind::GL2 => "GL2",
            GroupKind::PGL2 => "PGL2",
            GroupKind::Sym => "Sym",
            GroupKind::Alt => "Alt",
            GroupKind::PSL3 => "PSL3",
        };
        f.write_str(s)
    }
}

/// Search limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_order: usize,
    /// Subgroup closures computed by one search.
    pub max_closures: u64,
    pub max_subgroups: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_order: 100_000,
            max_closures: 1_000_000,
            max_subgroups: 10_000,
        }
    }
}

type Entries = [u8; 16];

/// An explicitly enumerated group.
#[derive(Debug, Clone)]
pub struct ConcreteGroup {
    kind: GroupKind,
    param: u64,
    width: usize,
    codes: Vec<u64>,
    index: HashMap<u64, u32>,
    inverse: Vec<u32>,
    elt_order: Vec<u32>,
    generators: Vec<u32>,
    identity: u32,
    /// Per generator g, the map x ↦ g⁻¹xg on indices.
    conj: Vec<Vec<u32>>,
}

fn bits(kind: GroupKind) -> u32 {
    if kind.is_matrix() {
        5
    } else {
        4
    }
}

fn primitive_root(p: u64) -> u64 {
    (1..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

impl ConcreteGroup {
    /// Builds the group from its standard generators.
    pub fn build(kind: GroupKind, param: u64) -> Result<Self, BruteError> {
        Self::build_with_budget(kind, param, &Budget::default())
    }

    pub fn build_with_budget(kind: GroupKind, param: u64, budget: &Budget) -> Result<Self, BruteError> {
        check_param(kind, param)?;
        let gens = standard_generators(kind, param);
        Self::from_generators(kind, param, &gens, budget)
    }

    /// Builds from arbitrary generators given as entry lists (row-major
    /// matrices or images of 0..n-1). The result must have the order of the
    /// named kind.
    pub fn from_generators(
        kind: GroupKind,
        param: u64,
        gens: &[Vec<u8>],
        budget: &Budget,
    ) -> Result<Self, BruteError> {
        check_param(kind, param)?;
        let width = degree(kind, param);
        let mut g = ConcreteGroup {
            kind,
            param,
            width,
            codes: Vec::new(),
            index: HashMap::new(),
            inverse: Vec::new(),
            elt_order: Vec::new(),
            generators: Vec::new(),
            identity: 0,
            conj: Vec::new(),
        };
        let mut gen_codes = Vec::new();
        for e in gens {
            gen_codes.push(g.code_of_entries(e)?);
        }
        let id = g.identity_code();
        g.codes.push(id);
        g.index.insert(id, 0);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for &s in &gen_codes {
                let y = g.mul_codes(x, s);
                if !g.index.contains_key(&y) {
                    if g.codes.len() >= budget.max_order {
                        return Err(BruteError::BudgetExceeded(format!(
                            "{kind}({param}) has more than {} elements",
                            budget.max_order
                        )));
                    }
                    g.index.insert(y, g.codes.len() as u32);
                    g.codes.push(y);
                    queue.push_back(y);
                }
            }
        }
        let expected = expected_order(kind, param);
        if g.codes.len() as u64 != expected {
            return Err(BruteError::OrderMismatch {
                built: g.codes.len(),
                expected: expected.to_string(),
            });
        }
        g.generators = gen_codes.iter().map(|c| g.index[c]).collect();
        g.finish();
        Ok(g)
    }

    fn finish(&mut self) {
        let n = self.codes.len();
        self.elt_order = vec![0; n];
        self.inverse = vec![0; n];
        for i in 0..n as u32 {
            let mut x = i;
            let mut prev = self.identity;
            let mut k = 1;
            while x != self.identity {
                prev = x;
                x = self.mul(x, i);
                k += 1;
            }
            // x = i^k = 1 and prev = i^(k-1)
            self.elt_order[i as usize] = k;
            self.inverse[i as usize] = prev;
        }
        self.conj = self
            .generators
            .iter()
            .map(|&g| {
                let gi = self.inverse[g as usize];
                (0..n as u32).map(|x| self.mul(self.mul(gi, x), g)).collect()
            })
            .collect();
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn param(&self) -> u64 {
        self.param
    }

    pub fn order(&self) -> usize {
        self.codes.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.elt_order[i as usize]
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn name(&self) -> String {
        format!("{}({})", self.kind, self.param)
    }

    fn decode(&self, code: u64) -> Entries {
        let b = bits(self.kind);
        let mask = (1u64 << b) - 1;
        let mut e = [0u8; 16];
        for (i, slot) in e.iter_mut().enumerate().take(self.width) {
            *slot = ((code >> (b * (self.width - 1 - i) as u32)) & mask) as u8;
        }
        e
    }

    fn encode(&self, e: &Entries) -> u64 {
        let b = bits(self.kind);
        e[..self.width].iter().fold(0u64, |acc, &x| (acc << b) | x as u64)
    }

    /// Entries of element `i`: a row-major matrix or the images of 0..n-1.
    pub fn entries(&self, i: u32) -> Vec<u8> {
        self.decode(self.codes[i as usize])[..self.width].to_vec()
    }

    /// Index of the element with the given entries; matrices of the
    /// projective kinds are reduced modulo scalars first.
    pub fn index_of(&self, entries: &[u8]) -> Option<u32> {
        let code = self.code_of_entries(entries).ok()?;
        self.index.get(&code).copied()
    }

    fn identity_code(&self) -> u64 {
        let mut e = [0u8; 16];
        if self.kind.is_matrix() {
            e[0] = 1;
            e[3] = 1;
        } else {
            for (i, slot) in e.iter_mut().enumerate().take(self.width) {
                *slot = i as u8;
            }
        }
        self.encode(&e)
    }

    fn code_of_entries(&self, entries: &[u8]) -> Result<u64, BruteError> {
        if entries.len() != self.width {
            return Err(BruteError::BadGenerator(format!("expected {} entries, got {entries:?}", self.width)));
        }
        let mut e = [0u8; 16];
        e[..self.width].copy_from_slice(entries);
        if self.kind.is_matrix() {
            let p = self.param;
            if e[..4].iter().any(|&x| x as u64 >= p) {
                return Err(BruteError::BadGenerator(format!("entries must lie in [0,{p}): {entries:?}")));
            }
            let det = (e[0] as u64 * e[3] as u64 + p * p - e[1] as u64 * e[2] as u64) % p;
            let ok = match self.kind {
                GroupKind::SL2 | GroupKind::PSL2 => det == 1,
                _ => det != 0,
            };
            if !ok {
                return Err(BruteError::BadGenerator(format!("determinant {det} not allowed in {}", self.kind)));
            }
            Ok(self.canonical(e))
        } else {
            let mut seen = [false; 16];
            for &x in &e[..self.width] {
                if x as usize >= self.width || seen[x as usize] {
                    return Err(BruteError::BadGenerator(format!("not a permutation: {entries:?}")));
                }
                seen[x as usize] = true;
            }
            if self.kind == GroupKind::Alt && !is_even(&e[..self.width]) {
                return Err(BruteError::BadGenerator(format!("odd permutation in Alt: {entries:?}")));
            }
            Ok(self.encode(&e))
        }
    }

    /// Least code among the scalar multiples allowed by the kind.
    fn canonical(&self, e: Entries) -> u64 {
        let p = self.param;
        let scalars: Vec<u64> = match self.kind {
            GroupKind::PSL2 => vec![1, p - 1],
            GroupKind::PGL2 => (1..p).collect(),
            _ => vec![1],
        };
        scalars
            .iter()
            .map(|&l| {
                let mut f = e;
                for x in f.iter_mut().take(4) {
                    *x = (*x as u64 * l % p) as u8;
                }
                self.encode(&f)
            })
            .min()
            .expect("nonempty scalar set")
    }

    fn mul_codes(&self, a: u64, b: u64) -> u64 {
        let x = self.decode(a);
        let y = self.decode(b);
        let mut z = [0u8; 16];
        if self.kind.is_matrix() {
            let p = self.param as u32;
            let m = |i: usize, j: usize| x[i] as u32 * y[j] as u32;
            z[0] = ((m(0, 0) + m(1, 2)) % p) as u8;
            z[1] = ((m(0, 1) + m(1, 3)) % p) as u8;
            z[2] = ((m(2, 0) + m(3, 2)) % p) as u8;
            z[3] = ((m(2, 1) + m(3, 3)) % p) as u8;
            if matches!(self.kind, GroupKind::PSL2 | GroupKind::PGL2) {
                return self.canonical(z);
            }
        } else {
            // apply a first, then b
            for i in 0..self.width {
                z[i] = y[x[i] as usize];
            }
        }
        self.encode(&z)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let c = self.mul_codes(self.codes[a as usize], self.codes[b as usize]);
        self.index[&c]
    }

    /// g⁻¹xg.
    pub fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    pub fn is_pi_element(&self, i: u32, pi: &PrimeSet) -> bool {
        let o = self.elt_order[i as usize] as u64;
        pi_part_u64(o, pi) == o
    }

    /// Subgroup generated by `gens`, or `None` once it exceeds `cap` elements.
    pub fn closure(&self, gens: &[u32], cap: usize) -> Option<Vec<u32>> {
        let mut set = HashSet::from([self.identity]);
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    if set.len() > cap {
                        return None;
                    }
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        Some(list)
    }

    fn image(&self, set: &[u32], map: &[u32]) -> Vec<u32> {
        let mut v: Vec<u32> = set.iter().map(|&x| map[x as usize]).collect();
        v.sort_unstable();
        v
    }

    /// All conjugates of a subgroup, by orbit closure under the generators.
    /// Each comes with the conjugating maps applied, as a path of generator
    /// positions from the start.
    fn conjugation_orbit(&self, start: &[u32]) -> Vec<(Vec<u32>, Vec<usize>)> {
        let mut seen = HashMap::from([(start.to_vec(), 0usize)]);
        let mut out = vec![(start.to_vec(), Vec::new())];
        let mut i = 0;
        while i < out.len() {
            let (set, path) = out[i].clone();
            i += 1;
            for (gi, map) in self.conj.iter().enumerate() {
                let img = self.image(&set, map);
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), out.len());
                    let mut p = path.clone();
                    p.push(gi);
                    out.push((img, p));
                }
            }
        }
        out
    }

    /// Element conjugacy class representatives (least index per class).
    fn element_class_reps(&self) -> Vec<u32> {
        let n = self.order();
        let mut class = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for start in 0..n as u32 {
            if class[start as usize] != u32::MAX {
                continue;
            }
            class[start as usize] = start;
            reps.push(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for map in &self.conj {
                    let y = map[x as usize];
                    if class[y as usize] == u32::MAX {
                        class[y as usize] = start;
                        stack.push(y);
                    }
                }
            }
        }
        reps
    }
}

fn is_even(perm: &[u8]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn degree(kind: GroupKind, param: u64) -> usize {
    match kind {
        GroupKind::PSL3 => (param * param + param + 1) as usize,
        k if k.is_matrix() => 4,
        _ => param as usize,
    }
}

fn check_param(kind: GroupKind, param: u64) -> Result<(), BruteError> {
    if kind == GroupKind::PSL3 {
        if !is_prime_u64(param) {
            return Err(BruteError::NonPrimeField(param));
        }
        if param > MAX_PLANE_FIELD {
            return Err(BruteError::OutOfRange(param));
        }
    } else if kind.is_matrix() {
        if !is_prime_u64(param) {
            return Err(BruteError::NonPrimeField(param));
        }
        if param > MAX_FIELD {
            return Err(BruteError::OutOfRange(param));
        }
    } else if param == 0 || param > MAX_DEGREE {
        return Err(BruteError::OutOfRange(param));
    }
    Ok(())
}

fn cycle(n: usize, points: &[usize]) -> Vec<u8> {
    let mut e: Vec<u8> = (0..n as u8).collect();
    for (i, &a) in points.iter().enumerate() {
        e[a] = points[(i + 1) % points.len()] as u8;
    }
    e
}

fn standard_generators(kind: GroupKind, param: u64) -> Vec<Vec<u8>> {
    let p = param as u8;
    let n = param as usize;
    match kind {
        GroupKind::SL2 | GroupKind::PSL2 => vec![vec![1, 1, 0, 1], vec![0, p - 1, 1, 0]],
        GroupKind::GL2 | GroupKind::PGL2 => {
            let w = primitive_root(param) as u8;
            vec![vec![1, 1, 0, 1], vec![0, p - 1, 1, 0], vec![w, 0, 0, 1]]
        }
        GroupKind::Sym if n == 1 => Vec::new(),
        GroupKind::Sym => vec![cycle(n, &[0, 1]), cycle(n, &(0..n).collect::<Vec<_>>())],
        GroupKind::Alt if n < 3 => Vec::new(),
        GroupKind::Alt => {
            let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
            vec![cycle(n, &[0, 1, 2]), cycle(n, &long)]
        }
        GroupKind::PSL3 => plane_transvections(param),
    }
}

/// Points of the projective plane over F_p: vectors whose first nonzero
/// coordinate is 1, in lexicographic order.
fn plane_points(p: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    pts
}

/// The six elementary transvections I + E_ij, as permutations of the points
/// (row vectors acted on from the right).
fn plane_transvections(p: u64) -> Vec<Vec<u8>> {
    let pts = plane_points(p);
    let normalise = |v: [u64; 3]| {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let inv = (1..p).find(|&y| lead * y % p == 1).expect("field inverse");
        [v[0] * inv % p, v[1] * inv % p, v[2] * inv % p]
    };
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let perm = pts
                .iter()
                .map(|v| {
                    let mut w = *v;
                    w[j] = (w[j] + v[i]) % p;
                    let w = normalise(w);
                    pts.iter().position(|x| *x == w).expect("image is a point") as u8
                })
                .collect();
            gens.push(perm);
        }
    }
    gens
}

/// Order expected for an explicit kind, from the groups module where it has
/// a description and from the textbook formula otherwise.
fn expected_order(kind: GroupKind, param: u64) -> u64 {
    if let Some(spec) = kind.spec(param) {
        if let Ok(s) = validate(&spec) {
            if let Some(v) = order(&s).order.value().to_u64() {
                return v;
            }
        }
    }
    let p = param;
    match kind {
        GroupKind::SL2 => p * (p * p - 1),
        GroupKind::PSL2 => p * (p * p - 1) / if p == 2 { 1 } else { 2 },
        GroupKind::GL2 => p * (p * p - 1) * (p - 1),
        GroupKind::PGL2 => p * (p * p - 1),
        GroupKind::Sym => factorial(p).to_u64().unwrap_or(0),
        GroupKind::Alt => (factorial(p) / if p >= 2 { 2u32 } else { 1 }).to_u64().unwrap_or(0),
        GroupKind::PSL3 => p.pow(3) * (p * p - 1) * (p.pow(3) - 1),
    }
}

/// A subgroup given by its sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SubgroupHandle {
    pub element_indices: Vec<u32>,
    pub order: usize,
    /// At most three elements generating the subgroup, when such a set was
    /// found; otherwise a longer generating list.
    pub generator_witness: Vec<u32>,
}

impl SubgroupHandle {
    fn new(elements: Vec<u32>, generator_witness: Vec<u32>) -> Self {
        SubgroupHandle {
            order: elements.len(),
            element_indices: elements,
            generator_witness,
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.element_indices.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubgroupHandle) -> bool {
        self.element_indices.iter().all(|&x| other.contains(x))
    }

    /// Closure under products and Lagrange, checked directly.
    pub fn check(&self, g: &ConcreteGroup) -> Result<(), String> {
        if self.order == 0 || g.order() % self.order != 0 {
            return Err(format!("order {} does not divide {}", self.order, g.order()));
        }
        if !self.contains(g.identity()) {
            return Err("identity missing".into());
        }
        for &a in &self.element_indices {
            for &b in &self.element_indices {
                if !self.contains(g.mul(a, b)) {
                    return Err(format!("not closed: {a}·{b}"));
                }
            }
        }
        match g.closure(&self.generator_witness, self.order) {
            Some(c) if c == self.element_indices => Ok(()),
            _ => Err("generator witness does not generate the subgroup".into()),
        }
    }
}

/// All π-Hall subgroups of a concrete group, split into conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub group: String,
    pub pi: PrimeSet,
    pub hall_order: usize,
    pub halls_found: Vec<SubgroupHandle>,
    /// Positions in `halls_found`, one list per class, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub class_count: usize,
    pub exhaustive: bool,
}

impl CensusReport {
    pub fn representatives(&self) -> Vec<&SubgroupHandle> {
        self.classes.iter().map(|c| &self.halls_found[c[0]]).collect()
    }

    pub fn export(&self, g: &ConcreteGroup) -> CensusExport {
        CensusExport {
            schema: 1,
            group: self.group.clone(),
            pi: self.pi.braces(),
            hall_order: self.hall_order,
            class_count: self.class_count,
            exhaustive: self.exhaustive,
            classes: self
                .classes
                .iter()
                .map(|c| {
                    let h = &self.halls_found[c[0]];
                    ClassExport {
                        size: c.len(),
                        generators: h.generator_witness.iter().map(|&x| g.entries(x)).collect(),
                    }
                })
                .collect(),
        }
    }
}

/// JSON shape of a census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusExport {
    pub schema: u32,
    pub group: String,
    pub pi: String,
    pub hall_order: usize,
    pub class_count: usize,
    pub exhaustive: bool,
    pub classes: Vec<ClassExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassExport {
    /// Number of Hall subgroups in the class.
    pub size: usize,
    /// Generators of a representative, as entry lists.
    pub generators: Vec<Vec<u8>>,
}

struct Counter<'a> {
    budget: &'a Budget,
    closures: u64,
    hit: bool,
}

impl Counter<'_> {
    fn closure(&mut self, g: &ConcreteGroup, gens: &[u32], cap: usize) -> Option<Vec<u32>> {
        if self.closures >= self.budget.max_closures {
            self.hit = true;
            return None;
        }
        self.closures += 1;
        g.closure(gens, cap)
    }
}

fn is_power_of(n: usize, r: u64) -> bool {
    let mut n = n as u64;
    while n % r == 0 {
        n /= r;
    }
    n == 1
}

/// A Sylow r-subgroup, grown greedily: every r-subgroup that is not Sylow
/// is normalised by a larger r-subgroup, so the greedy search cannot stall.
fn sylow(g: &ConcreteGroup, r: u64, target: usize, counter: &mut Counter) -> Option<(Vec<u32>, Vec<u32>)> {
    let r_elements: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| is_power_of(g.element_order(x) as usize, r) && x != g.identity())
        .collect();
    let mut h = vec![g.identity()];
    let mut gens: Vec<u32> = Vec::new();
    while h.len() < target {
        let mut grew = false;
        for &y in &r_elements {
            if h.binary_search(&y).is_ok() {
                continue;
            }
            let mut cand = gens.clone();
            cand.push(y);
            if let Some(k) = counter.closure(g, &cand, target) {
                if is_power_of(k.len(), r) {
                    h = k;
                    gens = cand;
                    grew = true;
                    if h.len() == target {
                        break;
                    }
                }
            } else if counter.hit {
                return None;
            }
        }
        if !grew {
            return None;
        }
    }
    Some((h, gens))
}

/// Short generating list for a subgroup: one or two elements if possible,
/// else the given list with redundant entries dropped.
fn short_generators(g: &ConcreteGroup, h: &[u32], fallback: &[u32]) -> Vec<u32> {
    let n = h.len();
    let mut by_order: Vec<u32> = h.to_vec();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    if let Some(&x) = by_order.iter().find(|&&x| g.element_order(x) as usize == n) {
        return vec![x];
    }
    let mut tries = 0;
    for (i, &a) in by_order.iter().enumerate() {
        for &b in &by_order[i + 1..] {
            tries += 1;
            if tries > 4_000 {
                break;
            }
            if g.closure(&[a, b], n).map(|c| c.len()) == Some(n) {
                return vec![a, b];
            }
        }
    }
    let mut gens = fallback.to_vec();
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let mut fewer = gens.clone();
        fewer.remove(i);
        if g.closure(&fewer, n).map(|c| c.len()) == Some(n) {
            gens = fewer;
        } else {
            i += 1;
        }
    }
    gens
}

/// Exhaustive π-Hall search.
///
/// Every π-Hall subgroup contains a Sylow r-subgroup for each r ∈ π, so up to
/// conjugacy it contains one fixed Sylow subgroup P. The search grows P by
/// π-elements breadth-first, one double coset HyH per candidate, keeping
/// subgroups of π-number order up to |G|_π, and then closes the Hall
/// subgroups found under conjugation.
pub fn find_hall_subgroups(g: &ConcreteGroup, pi: &PrimeSet, budget: &Budget) -> CensusReport {
    let n = g.order();
    let hall_order = pi_part_u64(n as u64, pi) as usize;
    let mut counter = Counter {
        budget,
        closures: 0,
        hit: false,
    };
    let mut reps: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    if hall_order == 1 {
        reps.push((vec![g.identity()], Vec::new()));
    } else if hall_order == n {
        reps.push(((0..n as u32).collect(), g.generators().to_vec()));
    } else {
        let (r, r_part) = pi
            .small()
            .into_iter()
            .map(|r| (r, pi_part_u64(n as u64, &PrimeSet::of(&[r]))))
            .max_by_key(|&(r, part)| (part, std::cmp::Reverse(r)))
            .expect("hall order > 1 needs a prime of π");
        if let Some(start) = sylow(g, r, r_part as usize, &mut counter) {
            reps = grow_to_halls(g, pi, hall_order, start, &mut counter);
        }
    }
    let mut halls: Vec<SubgroupHandle> = Vec::new();
    let mut where_: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut class_of: Vec<usize> = Vec::new();
    let mut n_classes = 0;
    for (set, gens) in &reps {
        if where_.contains_key(set) {
            continue;
        }
        let witness = short_generators(g, set, gens);
        for (img, path) in g.conjugation_orbit(set) {
            if halls.len() >= budget.max_subgroups {
                counter.hit = true;
                break;
            }
            let mut w = witness.clone();
            for &gi in &path {
                w = w.iter().map(|&x| g.conj[gi][x as usize]).collect();
            }
            where_.insert(img.clone(), halls.len());
            halls.push(SubgroupHandle::new(img, w));
            class_of.push(n_classes);
        }
        n_classes += 1;
    }
    let mut order_idx: Vec<usize> = (0..halls.len()).collect();
    order_idx.sort_by(|&a, &b| halls[a].element_indices.cmp(&halls[b].element_indices));
    let sorted: Vec<SubgroupHandle> = order_idx.iter().map(|&i| halls[i].clone()).collect();
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (pos, &i) in order_idx.iter().enumerate() {
        by_class.entry(class_of[i]).or_default().push(pos);
    }
    let mut classes: Vec<Vec<usize>> = by_class.into_values().collect();
    classes.sort();
    CensusReport {
        group: g.name(),
        pi: pi.clone(),
        hall_order,
        class_count: classes.len(),
        halls_found: sorted,
        classes,
        exhaustive: !counter.hit,
    }
}

fn grow_to_halls(
    g: &ConcreteGroup,
    pi: &PrimeSet,
    hall_order: usize,
    start: (Vec<u32>, Vec<u32>),
    counter: &mut Counter,
) -> Vec<(Vec<u32>, Vec<u32>)> {
    let pi_elements: Vec<u32> = (0..g.order() as u32).filter(|&x| g.is_pi_element(x, pi)).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([start.0.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    let mut done = vec![false; g.order()];
    while let Some((h, gens)) = queue.pop_front() {
        if h.len() == hall_order {
            out.push((h, gens));
            continue;
        }
        done.iter_mut().for_each(|d| *d = false);
        for &x in &h {
            done[x as usize] = true;
        }
        for &y in &pi_elements {
            if done[y as usize] {
                continue;
            }
            for &a in &h {
                let ay = g.mul(a, y);
                for &b in &h {
                    done[g.mul(ay, b) as usize] = true;
                }
            }
            let mut cand = gens.clone();
            cand.push(y);
            let Some(k) = counter.closure(g, &cand, hall_order) else {
                if counter.hit {
                    return out;
                }
                continue;
            };
            let ko = k.len() as u64;
            if pi_part_u64(ko, pi) != ko || seen.contains(&k) {
                continue;
            }
            if seen.len() >= counter.budget.max_subgroups {
                counter.hit = true;
                return out;
            }
            seen.insert(k.clone());
            queue.push_back((k, cand));
        }
    }
    out
}

/// Splits equal-order subgroups into conjugacy classes (positions into the
/// input), using orbits under conjugation by the group's generators.
pub fn conjugacy_class_count(g: &ConcreteGroup, subgroups: &[SubgroupHandle]) -> Vec<Vec<usize>> {
    let mut assigned = vec![usize::MAX; subgroups.len()];
    let mut lookup: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (i, s) in subgroups.iter().enumerate() {
        lookup.entry(&s.element_indices[..]).or_default().push(i);
    }
    let mut classes = Vec::new();
    for i in 0..subgroups.len() {
        if assigned[i] != usize::MAX {
            continue;
        }
        let mut members = Vec::new();
        for (img, _) in g.conjugation_orbit(&subgroups[i].element_indices) {
            if let Some(js) = lookup.get(&img[..]) {
                for &j in js {
                    if assigned[j] == usize::MAX {
                        assigned[j] = classes.len();
                        members.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// A π-subgroup that is not conjugate to a subgroup of the first listed
/// Hall subgroup. With two or more classes a Hall subgroup of another class
/// serves; with one class the search runs over subgroups generated by an
/// element class representative and one more π-element. `None` when there
/// are no Hall subgroups or nothing was found within the budget.
pub fn find_dpi_counterexample(
    g: &ConcreteGroup,
    pi: &PrimeSet,
    census: &CensusReport,
    budget: &Budget,
) -> Option<SubgroupHandle> {
    if census.halls_found.is_empty() {
        return None;
    }
    if census.class_count >= 2 {
        return Some(census.halls_found[census.classes[1][0]].clone());
    }
    let n = g.order();
    let mut in_any = vec![false; n];
    for h in &census.halls_found {
        for &x in &h.element_indices {
            in_any[x as usize] = true;
        }
    }
    let contained = |k: &[u32]| {
        census
            .halls_found
            .iter()
            .any(|h| k.iter().all(|&x| h.contains(x)))
    };
    let pi_elements: Vec<u32> = (0..n as u32).filter(|&x| g.is_pi_element(x, pi)).collect();
    let reps: Vec<u32> = g
        .element_class_reps()
        .into_iter()
        .filter(|&x| g.is_pi_element(x, pi) && x != g.identity())
        .collect();
    for &x in &reps {
        if !in_any[x as usize] {
            let k = g.closure(&[x], n).expect("cyclic closure");
            return Some(SubgroupHandle::new(k, vec![x]));
        }
    }
    let mut counter = Counter {
        budget,
        closures: 0,
        hit: false,
    };
    for &x in &reps {
        for &y in &pi_elements {
            if y <= x && reps.contains(&y) {
                continue;
            }
            let Some(k) = counter.closure(g, &[x, y], census.hall_order) else {
                if counter.hit {
                    return None;
                }
                continue;
            };
            let ko = k.len() as u64;
            if pi_part_u64(ko, pi) == ko && !contained(&k) {
                return Some(SubgroupHandle::new(k, vec![x, y]));
            }
        }
    }
    None
}

/// One compared field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub classify: String,
    pub census: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub group: String,
    pub pi: String,
    pub checks: Vec<FieldCheck>,
    pub passed: bool,
}

impl VerificationOutcome {
    pub fn failures(&self) -> Vec<&FieldCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn check(field: &str, classify: impl ToString, census: impl ToString, pass: bool) -> FieldCheck {
    FieldCheck {
        field: field.into(),
        classify: classify.to_string(),
        census: census.to_string(),
        pass,
    }
}

/// Compares a classifier report with a census of the same group: E_π, the
/// Hall order, k_π and C_π always, D_π when the census is exhaustive and the
/// report gives a verdict.
pub fn verify_report(g: &ConcreteGroup, report: &HallReport, census: &CensusReport, budget: &Budget) -> VerificationOutcome {
    let mut checks = Vec::new();
    let e_census = !census.halls_found.is_empty();
    let e_ok = match &report.e_pi {
        Verdict::Yes => e_census,
        Verdict::No => !e_census,
        Verdict::OutOfScope(_) => true,
    };
    checks.push(check("e_pi", &report.e_pi, if e_census { "yes" } else { "no" }, e_ok));
    if e_census {
        let stated = report.hall_order.clone().unwrap_or_else(|| "-".into());
        let pass = stated == census.hall_order.to_string();
        checks.push(check("hall_order", stated, census.hall_order, pass));
    }
    let k = census.class_count as u64;
    let k_ok = match &report.k_pi {
        KPi::Exact(x) => *x == k,
        KPi::Bound(set) => set.contains(&k),
    };
    checks.push(check("k_pi", &report.k_pi, k, k_ok));
    let c_ok = match &report.c_pi {
        Verdict::Yes => k == 1,
        Verdict::No => k != 1,
        Verdict::OutOfScope(_) => true,
    };
    checks.push(check("c_pi", &report.c_pi, if k == 1 { "yes" } else { "no" }, c_ok));
    if census.exhaustive && !report.d_pi.is_out_of_scope() && e_census {
        let witness = find_dpi_counterexample(g, &report.pi, census, budget);
        let observed = if witness.is_some() { "no" } else { "yes" };
        let pass = report.d_pi.is_yes() == witness.is_none();
        checks.push(check("d_pi", &report.d_pi, observed, pass));
    }
    VerificationOutcome {
        group: census.group.clone(),
        pi: report.pi.braces(),
        passed: checks.iter().all(|c| c.pass),
        checks,
    }
}
