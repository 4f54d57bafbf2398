//! The classification engine: per-family Hall criteria, class descriptors,
//! k_π and the C_π/D_π verdicts.

mod bound;
mod defining;
mod exceptional;
mod linear;
mod orthogonal;
mod sl2;
mod sporadic;
pub mod structure;
mod symmetric;
mod symplectic;

pub use bound::{kpi_bound_almost_simple, regime_bound, KpiBound, OuterDescription};
pub use defining::classify_defining_char;
pub use exceptional::classify_exceptional;
pub use linear::classify_linear_unitary;
pub use orthogonal::classify_orthogonal;
pub use sl2::{classify_gl2, classify_sl2};
pub use structure::{structure_order, StructureError};
pub use symmetric::{classify_alt, classify_sym, sym_hall, SymHall};
pub use symplectic::classify_symplectic;

use crate::arith::{factorize, pi_part, PrimeSet, Sign};
use crate::groups::{order, validate, Family, GroupError, GroupOrder, GroupSpec};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{0}")]
    Invalid(#[from] GroupError),
    #[error("outside the domain of this classifier: {0}")]
    Scope(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    OutOfScope(String),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn is_out_of_scope(&self) -> bool {
        matches!(self, Verdict::OutOfScope(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::OutOfScope(r) => write!(f, "out_of_scope ({r})"),
        }
    }
}

/// Which part of the π landscape a query falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// π ⊇ π(G): the group is its own Hall subgroup.
    #[serde(rename = "whole")]
    Whole,
    /// |π ∩ π(G)| ≤ 1: Sylow subgroups.
    #[serde(rename = "sylow")]
    Sylow,
    #[serde(rename = "2-not-in-pi")]
    NoTwo,
    #[serde(rename = "2-in-pi-3-not")]
    TwoNotThree,
    /// 2, 3 ∈ π and the characteristic is outside π (or there is none).
    #[serde(rename = "2-3-cross")]
    Cross,
    /// 2, 3 ∈ π and the characteristic lies in π.
    #[serde(rename = "2-3-defining")]
    Defining,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit enum");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// k_π: an exact count, or the set it is known to lie in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KPi {
    Exact(u64),
    Bound(Vec<u64>),
}

impl KPi {
    pub fn exact(&self) -> Option<u64> {
        match self {
            KPi::Exact(k) => Some(*k),
            KPi::Bound(_) => None,
        }
    }
}

impl fmt::Display for KPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPi::Exact(k) => write!(f, "{k}"),
            KPi::Bound(b) => {
                let parts: Vec<String> = b.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// One evaluated arithmetic condition, with the numbers it was checked on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub check: String,
    pub evaluated: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HallClassDescriptor {
    pub case_id: String,
    pub structure: String,
    pub class_count: u64,
    pub conditions: Vec<Condition>,
    pub fusion_note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallReport {
    pub schema: u32,
    pub spec: GroupSpec,
    pub pi: PrimeSet,
    pub scope_tag: Regime,
    pub e_pi: Verdict,
    pub classes: Vec<HallClassDescriptor>,
    pub k_pi: KPi,
    pub c_pi: Verdict,
    pub d_pi: Verdict,
    /// |G|_π in decimal, present when E_π holds.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hall_order: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl HallReport {
    pub fn k_exact(&self) -> Option<u64> {
        self.k_pi.exact()
    }

    pub fn hall_order_value(&self) -> Option<BigUint> {
        self.hall_order.as_ref().and_then(|s| s.parse().ok())
    }
}

/// Conditions of one statement, evaluated in order. Once a condition fails
/// the statement is dead and later ones are not recorded.
pub(crate) struct Stmt {
    conds: Vec<Condition>,
    ok: bool,
}

impl Stmt {
    pub(crate) fn new() -> Self {
        Stmt {
            conds: Vec::new(),
            ok: true,
        }
    }

    pub(crate) fn req(mut self, check: impl Into<String>, evaluated: impl fmt::Display, holds: bool) -> Self {
        if self.ok {
            self.conds.push(Condition {
                check: check.into(),
                evaluated: evaluated.to_string(),
            });
            self.ok = holds;
        }
        self
    }

    /// Lazy variant for conditions that are only meaningful once the
    /// earlier ones hold.
    pub(crate) fn req_with(self, f: impl FnOnce() -> (String, String, bool)) -> Self {
        if !self.ok {
            return self;
        }
        let (check, evaluated, holds) = f();
        self.req(check, evaluated, holds)
    }

    pub(crate) fn holds(&self) -> bool {
        self.ok
    }

    pub(crate) fn emit(
        self,
        case_id: &str,
        structure: impl Into<String>,
        class_count: u64,
        fusion_note: impl Into<String>,
    ) -> Option<HallClassDescriptor> {
        self.ok.then(|| HallClassDescriptor {
            case_id: case_id.to_string(),
            structure: structure.into(),
            class_count,
            conditions: self.conds,
            fusion_note: fusion_note.into(),
        })
    }
}

pub(crate) fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// q - s as a big integer.
pub(crate) fn qm(q: u64, s: Sign) -> BigUint {
    match s {
        Sign::Plus => big(q) - 1u32,
        Sign::Minus => big(q) + 1u32,
    }
}

pub(crate) fn q2m1(q: u64) -> BigUint {
    big(q) * q - 1u32
}

pub(crate) fn primes_of(n: &BigUint) -> PrimeSet {
    factorize(n).primes()
}

pub(crate) fn pp(n: &BigUint, primes: &[u64]) -> BigUint {
    pi_part(n, &PrimeSet::of(primes))
}

pub(crate) fn set_text(s: &PrimeSet) -> String {
    s.braces()
}

/// `π ∩ π(G) ⊆ π(x)`, recorded with the evaluated sets.
pub(crate) fn subset_cond(stmt: Stmt, inter: &PrimeSet, label: &str, x: &BigUint) -> Stmt {
    let px = primes_of(x);
    stmt.req(
        format!("π∩π(G) ⊆ π({label})"),
        format!("{} ⊆ π({x}) = {}", set_text(inter), set_text(&px)),
        inter.is_subset(&px),
    )
}

pub(crate) fn inter_is(stmt: Stmt, inter: &PrimeSet, want: &[u64]) -> Stmt {
    stmt.req(
        format!("π∩π(G) = {}", set_text(&PrimeSet::of(want))),
        set_text(inter),
        inter.is(want),
    )
}

pub(crate) fn part_is(stmt: Stmt, label: &str, x: &BigUint, primes: &[u64], want: u64) -> Stmt {
    let v = pp(x, primes);
    let set = set_text(&PrimeSet::of(primes));
    stmt.req(format!("({label})_{set} = {want}"), format!("({x})_{set} = {v}"), v == big(want))
}

pub(crate) fn congruent(stmt: Stmt, q: u64, rhs: i64, m: u64, label: &str) -> Stmt {
    let r = rhs.rem_euclid(m as i64) as u64;
    stmt.req(
        format!("q ≡ {label} (mod {m})"),
        format!("{q} ≡ {} (mod {m}), need {r}", q % m),
        q % m == r,
    )
}

/// `/ c` suffix turning an isometry-group structure into one for the simple
/// quotient by a centre of order c (only its π-part lies in the Hall).
pub(crate) fn quotient(structure: String, center: u64, pi: &PrimeSet) -> String {
    let c = crate::arith::pi_part_u64(center, pi);
    if c == 1 {
        structure
    } else {
        format!("({structure}) / {c}")
    }
}

/// Facts shared by the family classifiers.
pub(crate) struct Ctx {
    pub spec: GroupSpec,
    pub pi: PrimeSet,
    pub order: GroupOrder,
    pub inter: PrimeSet,
}

impl Ctx {
    pub(crate) fn new(spec: GroupSpec, pi: &PrimeSet) -> Self {
        let order = order(&spec);
        let inter = pi.intersection(&order.order.primes());
        Ctx {
            spec,
            pi: pi.clone(),
            order,
            inter,
        }
    }

    pub(crate) fn hall_order(&self) -> BigUint {
        pi_part(self.order.order.value(), &self.pi)
    }

    pub(crate) fn regime(&self) -> Regime {
        let all = self.order.order.primes();
        if all.is_subset(&self.pi) {
            return Regime::Whole;
        }
        if self.inter.len() <= 1 {
            return Regime::Sylow;
        }
        if !self.pi.contains(2) {
            return Regime::NoTwo;
        }
        if !self.pi.contains(3) {
            return Regime::TwoNotThree;
        }
        if self.spec.family.is_lie_type() && self.pi.contains(self.spec.p()) {
            Regime::Defining
        } else {
            Regime::Cross
        }
    }

    /// Report for a fully decided query.
    pub(crate) fn exact(&self, classes: Vec<HallClassDescriptor>, notes: Vec<String>) -> HallReport {
        let k: u64 = classes.iter().map(|c| c.class_count).sum();
        let e = k >= 1;
        let c_pi = Verdict::from_bool(k == 1);
        let regime = self.regime();
        let d_pi = match regime {
            Regime::Whole | Regime::Sylow => Verdict::Yes,
            _ if !e || k >= 2 => Verdict::No,
            Regime::Cross => Verdict::No,
            _ => Verdict::OutOfScope("D_π is not decided by the criteria for this regime".into()),
        };
        HallReport {
            schema: SCHEMA_VERSION,
            spec: self.spec.clone(),
            pi: self.pi.clone(),
            scope_tag: regime,
            e_pi: Verdict::from_bool(e),
            classes,
            k_pi: KPi::Exact(k),
            c_pi,
            d_pi,
            hall_order: e.then(|| self.hall_order().to_string()),
            notes,
        }
    }

    /// Report for a regime whose criteria are not encoded.
    pub(crate) fn bounded(&self, reason: &str) -> HallReport {
        let regime = self.regime();
        let oos = Verdict::OutOfScope(reason.to_string());
        HallReport {
            schema: SCHEMA_VERSION,
            spec: self.spec.clone(),
            pi: self.pi.clone(),
            scope_tag: regime,
            e_pi: oos.clone(),
            classes: Vec::new(),
            k_pi: KPi::Bound(regime_bound(regime)),
            c_pi: oos.clone(),
            d_pi: oos,
            hall_order: None,
            notes: Vec::new(),
        }
    }

    /// Whole group or Sylow subgroup.
    pub(crate) fn trivial(&self) -> Option<HallReport> {
        match self.regime() {
            Regime::Whole => {
                let d = Stmt::new()
                    .req(
                        "π(G) ⊆ π",
                        format!("{} ⊆ {}", set_text(&self.order.order.primes()), set_text(&self.pi)),
                        true,
                    )
                    .emit("trivial.whole-group", self.spec.to_string(), 1, "G itself");
                Some(self.exact(d.into_iter().collect(), Vec::new()))
            }
            Regime::Sylow => {
                let hall = self.hall_order();
                let structure = match self.inter.small().first() {
                    Some(&r) => format!("{r}^{}", self.order.order.exponent(r)),
                    None => "1".to_string(),
                };
                let d = Stmt::new()
                    .req("|π∩π(G)| ≤ 1", set_text(&self.inter), true)
                    .emit(
                        "trivial.sylow",
                        structure,
                        1,
                        format!("Sylow subgroups of order {hall}, all conjugate"),
                    );
                Some(self.exact(d.into_iter().collect(), Vec::new()))
            }
            _ => None,
        }
    }
}

pub(crate) fn check_field(q: u64) -> Result<(), ClassifyError> {
    crate::groups::FieldOrder::new(q).map(|_| ()).map_err(ClassifyError::Invalid)
}

pub(crate) fn require_cross(q: u64, pi: &PrimeSet) -> Result<(), ClassifyError> {
    let p = crate::arith::prime_power(q)
        .ok_or_else(|| ClassifyError::Scope(format!("{q} is not a prime power")))?
        .0;
    if q % 2 == 0 {
        return Err(ClassifyError::Scope(format!("q = {q} is even")));
    }
    if pi.contains(p) {
        return Err(ClassifyError::Scope(format!("the characteristic {p} lies in π")));
    }
    if !pi.contains(2) || !pi.contains(3) {
        return Err(ClassifyError::Scope("needs 2, 3 ∈ π".into()));
    }
    Ok(())
}

/// Decides Hall existence, classes and k_π for a group description.
pub fn classify(spec: &GroupSpec, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    let spec = validate(spec)?;
    let ctx = Ctx::new(spec, pi);
    if let Some(r) = ctx.trivial() {
        return Ok(r);
    }
    match ctx.spec.family {
        Family::Sym | Family::Alt => return Ok(symmetric::report(&ctx)),
        Family::Orthogonal if ctx.spec.degree() == 2 => return Ok(orthogonal::cyclic_report(&ctx)),
        Family::Sporadic => {
            if let Some(r) = sporadic::report(&ctx) {
                return Ok(r);
            }
        }
        Family::TwoG2 if ctx.regime() == Regime::TwoNotThree => {
            if let Some(r) = exceptional::ree_report(&ctx) {
                return Ok(r);
            }
        }
        _ => {}
    }
    Ok(match ctx.regime() {
        Regime::NoTwo => ctx.bounded("criteria for 2 ∉ π are not encoded (Hall subgroups are conjugate when they exist)"),
        Regime::TwoNotThree => ctx.bounded("criteria for 2 ∈ π, 3 ∉ π are not encoded"),
        Regime::Defining => defining::report(&ctx),
        Regime::Cross => cross_report(&ctx),
        Regime::Whole | Regime::Sylow => unreachable!("handled above"),
    })
}

fn cross_report(ctx: &Ctx) -> HallReport {
    let spec = &ctx.spec;
    let (classes, notes) = match spec.family {
        Family::LinearUnitary => linear::descriptors(ctx),
        Family::Symplectic => (symplectic::descriptors(ctx), Vec::new()),
        Family::Orthogonal => (orthogonal::descriptors(ctx), Vec::new()),
        Family::Sporadic => (Vec::new(), Vec::new()),
        Family::TwoG2 => (Vec::new(), Vec::new()),
        f if f.is_exceptional() => (exceptional::descriptors(ctx), Vec::new()),
        _ => unreachable!("symmetric families handled earlier"),
    };
    ctx.exact(classes, notes)
}

/// Checks that every class structure has order whose π-part equals |G|_π.
pub fn check_soundness(report: &HallReport) -> Result<(), String> {
    let Some(hall) = report.hall_order_value() else {
        return Ok(());
    };
    for c in &report.classes {
        let o = structure_order(&c.structure, &report.pi).map_err(|e| format!("{}: {e}", c.case_id))?;
        let part = pi_part(&o, &report.pi);
        if part != hall || o != part {
            return Err(format!(
                "{} `{}` has order {o}, expected a π-number equal to {hall}",
                c.case_id, c.structure
            ));
        }
    }
    Ok(())
}

pub(crate) fn gcd_big(a: &BigUint, b: &BigUint) -> BigUint {
    num_integer::Integer::gcd(a, b)
}

/// Internal consistency of a report: the verdicts agree with k_π and the
/// class list, and every class structure has the Hall order.
pub fn report_invariants(r: &HallReport) -> Vec<String> {
    let mut bad = Vec::new();
    let total: u64 = r.classes.iter().map(|c| c.class_count).sum();
    if r.classes.iter().any(|c| c.class_count == 0) {
        bad.push("a class descriptor has class_count 0".to_string());
    }
    if let Some(k) = r.k_exact() {
        if total != k {
            bad.push(format!("class counts sum to {total}, k_π = {k}"));
        }
        if r.e_pi.is_yes() != (k >= 1) || r.e_pi.is_yes() == r.classes.is_empty() {
            bad.push(format!("E_π = {} disagrees with k_π = {k}", r.e_pi));
        }
        if !r.c_pi.is_out_of_scope() && r.c_pi.is_yes() != (k == 1) {
            bad.push(format!("C_π = {} disagrees with k_π = {k}", r.c_pi));
        }
    }
    if r.d_pi.is_yes() && !r.c_pi.is_yes() {
        bad.push("D_π holds without C_π".to_string());
    }
    if let Err(e) = check_soundness(r) {
        bad.push(e);
    }
    bad
}
