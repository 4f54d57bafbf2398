//! Symbolic group descriptions: families, parameter checks, orders and the
//! canonicalisation of small-rank isomorphisms.

mod order;
mod parse;
mod sporadic;

pub use order::{cyclotomic_value, order, order_value, q_pow_minus_factored, GroupOrder};
pub use sporadic::{Sporadic, SPORADICS};

use crate::arith::{is_prime_u64, prime_power, PrimeSet, Sign};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter [{rule}]: {detail}")]
    InvalidParameter { rule: String, detail: String },
    #[error("not simple: {0}")]
    NonSimple(String),
}

fn invalid(rule: &str, detail: impl Into<String>) -> GroupError {
    GroupError::InvalidParameter {
        rule: rule.to_string(),
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Alt,
    Sym,
    Sporadic,
    LinearUnitary,
    Symplectic,
    Orthogonal,
    G2,
    F4,
    E6,
    E7,
    E8,
    TriD4,
    TwoG2,
}

impl Family {
    pub fn is_lie_type(self) -> bool {
        !matches!(self, Family::Alt | Family::Sym | Family::Sporadic)
    }

    pub fn is_exceptional(self) -> bool {
        matches!(
            self,
            Family::G2
                | Family::F4
                | Family::E6
                | Family::E7
                | Family::E8
                | Family::TriD4
                | Family::TwoG2
        )
    }
}

/// Which group in the isogeny class: the simple quotient, the isometry
/// group (SL, Sp, Ω) or, in dimension 2 only, the full GL/GU.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Simple,
    Isometry,
    General,
}

/// A field order q = p^a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldOrder {
    pub p: u64,
    pub a: u32,
}

impl FieldOrder {
    pub fn new(q: u64) -> Result<Self, GroupError> {
        match prime_power(q) {
            Some((p, a)) => Ok(FieldOrder { p, a }),
            None => Err(invalid("q.prime-power", format!("{q} is not a prime power"))),
        }
    }

    pub fn from_parts(p: u64, a: u32) -> Result<Self, GroupError> {
        if !is_prime_u64(p) || a == 0 {
            return Err(invalid("q.prime-power", format!("{p}^{a} is not a prime power")));
        }
        p.checked_pow(a)
            .ok_or_else(|| invalid("q.size", format!("{p}^{a} does not fit in 64 bits")))?;
        Ok(FieldOrder { p, a })
    }

    pub fn q(self) -> u64 {
        self.p.pow(self.a)
    }

    pub fn is_odd(self) -> bool {
        self.p != 2
    }

    pub fn squared(self) -> FieldOrder {
        FieldOrder {
            p: self.p,
            a: 2 * self.a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<FieldOrder>,
    /// `None` stands for the odd-dimensional orthogonal marker ∘ and for
    /// families without a sign.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<Sign>,
    pub variant: Variant,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sporadic: Option<Sporadic>,
    /// Names this group was given before canonicalisation.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub aliases: Vec<String>,
}

impl GroupSpec {
    fn base(family: Family, variant: Variant) -> Self {
        GroupSpec {
            family,
            n: None,
            q: None,
            eta: None,
            variant,
            sporadic: None,
            aliases: Vec::new(),
        }
    }

    pub fn alt(n: u32) -> Self {
        GroupSpec {
            n: Some(n),
            ..Self::base(Family::Alt, Variant::Simple)
        }
    }

    pub fn sym(n: u32) -> Self {
        GroupSpec {
            n: Some(n),
            ..Self::base(Family::Sym, Variant::Isometry)
        }
    }

    pub fn sporadic(s: Sporadic) -> Self {
        GroupSpec {
            sporadic: Some(s),
            ..Self::base(Family::Sporadic, Variant::Simple)
        }
    }

    fn lie(family: Family, n: Option<u32>, q: u64, eta: Option<Sign>, variant: Variant) -> Self {
        GroupSpec {
            n,
            q: Some(FieldOrder::new(q).unwrap_or_else(|e| panic!("{e}"))),
            eta,
            ..Self::base(family, variant)
        }
    }

    pub fn psl(n: u32, q: u64, eta: Sign) -> Self {
        Self::lie(Family::LinearUnitary, Some(n), q, Some(eta), Variant::Simple)
    }

    pub fn sl(n: u32, q: u64, eta: Sign) -> Self {
        Self::lie(Family::LinearUnitary, Some(n), q, Some(eta), Variant::Isometry)
    }

    pub fn gl2(q: u64, eta: Sign) -> Self {
        Self::lie(Family::LinearUnitary, Some(2), q, Some(eta), Variant::General)
    }

    pub fn psp(n: u32, q: u64) -> Self {
        Self::lie(Family::Symplectic, Some(n), q, None, Variant::Simple)
    }

    pub fn sp(n: u32, q: u64) -> Self {
        Self::lie(Family::Symplectic, Some(n), q, None, Variant::Isometry)
    }

    /// The simple orthogonal group PΩ_n^η(q); `eta` is `None` for odd n.
    pub fn orthogonal(n: u32, q: u64, eta: Option<Sign>) -> Self {
        Self::lie(Family::Orthogonal, Some(n), q, eta, Variant::Simple)
    }

    /// The isometry group Ω_n^η(q).
    pub fn omega(n: u32, q: u64, eta: Option<Sign>) -> Self {
        Self::lie(Family::Orthogonal, Some(n), q, eta, Variant::Isometry)
    }

    pub fn exceptional(family: Family, q: u64, eta: Option<Sign>) -> Self {
        assert!(family.is_exceptional());
        let eta = if family == Family::E6 {
            Some(eta.unwrap_or(Sign::Plus))
        } else {
            None
        };
        Self::lie(family, None, q, eta, Variant::Simple)
    }

    pub fn parse(text: &str) -> Result<Self, GroupError> {
        parse::parse_spec(text)
    }

    /// Parses and validates in one step.
    pub fn parse_valid(text: &str) -> Result<Self, GroupError> {
        validate(&Self::parse(text)?)
    }

    pub fn q(&self) -> u64 {
        self.q.map(FieldOrder::q).unwrap_or(0)
    }

    pub fn p(&self) -> u64 {
        self.q.map(|f| f.p).unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.n.unwrap_or(0)
    }

    pub fn is_simple_variant(&self) -> bool {
        self.variant == Variant::Simple
    }

    /// Same group without the alias history.
    pub fn without_aliases(&self) -> GroupSpec {
        GroupSpec {
            aliases: Vec::new(),
            ..self.clone()
        }
    }
}

fn sign_suffix(eta: Option<Sign>) -> &'static str {
    match eta {
        Some(Sign::Minus) => ",-",
        _ => "",
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let q = self.q();
        match self.family {
            Family::Alt => write!(f, "Alt({n})"),
            Family::Sym => write!(f, "Sym({n})"),
            Family::Sporadic => write!(f, "{}", self.sporadic.map(|s| s.name()).unwrap_or("?")),
            Family::LinearUnitary => match self.variant {
                Variant::Simple => write!(f, "PSL({n},{q}{})", sign_suffix(self.eta)),
                Variant::Isometry => write!(f, "SL({n},{q}{})", sign_suffix(self.eta)),
                Variant::General => {
                    write!(f, "GL({n},{q},{})", self.eta.unwrap_or(Sign::Plus))
                }
            },
            Family::Symplectic => match self.variant {
                Variant::Simple => write!(f, "PSp({n},{q})"),
                _ => write!(f, "Sp({n},{q})"),
            },
            Family::Orthogonal => {
                let head = if self.variant == Variant::Simple { "O" } else { "Omega" };
                let sign = self.eta.map(|s| s.symbol().to_string()).unwrap_or_default();
                write!(f, "{head}{sign}({n},{q})")
            }
            Family::G2 => write!(f, "G2({q})"),
            Family::F4 => write!(f, "F4({q})"),
            Family::E6 => write!(f, "E6({q}{})", sign_suffix(self.eta)),
            Family::E7 => write!(f, "E7({q})"),
            Family::E8 => write!(f, "E8({q})"),
            Family::TriD4 => write!(f, "3D4({q})"),
            Family::TwoG2 => write!(f, "2G2({q})"),
        }
    }
}

fn require_q(spec: &GroupSpec) -> Result<FieldOrder, GroupError> {
    spec.q
        .ok_or_else(|| invalid("q.missing", format!("{:?} needs a field order", spec.family)))
}

fn require_n(spec: &GroupSpec) -> Result<u32, GroupError> {
    spec.n
        .ok_or_else(|| invalid("n.missing", format!("{:?} needs a degree", spec.family)))
}

fn require_odd_q(fq: FieldOrder, family: &str) -> Result<(), GroupError> {
    if fq.is_odd() {
        Ok(())
    } else {
        Err(invalid(
            "q.odd",
            format!("{family} groups are modelled over fields of odd order, got q={}", fq.q()),
        ))
    }
}

fn with_alias(mut target: GroupSpec, source: &GroupSpec) -> GroupSpec {
    target.aliases = source.aliases.clone();
    target.aliases.push(source.to_string());
    target
}

/// Checks parameters and rewrites small-rank coincidences to one canonical
/// family. Errors name the violated rule.
pub fn validate(spec: &GroupSpec) -> Result<GroupSpec, GroupError> {
    let mut s = spec.clone();
    match s.family {
        Family::Alt => {
            let n = require_n(&s)?;
            if s.variant != Variant::Simple {
                return Err(invalid("alt.variant", "Alt only has the simple variant"));
            }
            if n < 5 {
                return Err(GroupError::NonSimple(format!("Alt({n})")));
            }
            s.q = None;
            s.eta = None;
        }
        Family::Sym => {
            let n = require_n(&s)?;
            if n < 2 {
                return Err(invalid("sym.degree", format!("Sym({n}) needs n >= 2")));
            }
            s.variant = Variant::Isometry;
            s.q = None;
            s.eta = None;
        }
        Family::Sporadic => {
            if s.sporadic.is_none() {
                return Err(invalid("sporadic.name", "missing sporadic name"));
            }
            s.variant = Variant::Simple;
        }
        Family::LinearUnitary => return validate_linear(s),
        Family::Symplectic => {
            let n = require_n(&s)?;
            let fq = require_q(&s)?;
            if n % 2 == 1 || n < 2 {
                return Err(invalid("sp.degree", format!("Sp needs even n >= 2, got {n}")));
            }
            require_odd_q(fq, "symplectic")?;
            if s.variant == Variant::General {
                return Err(invalid("variant.general", "general variant exists only for GL2/GU2"));
            }
            s.eta = None;
            if n == 2 {
                let mut t = s.clone();
                t.family = Family::LinearUnitary;
                t.eta = Some(Sign::Plus);
                return validate_linear(with_alias(t, &s));
            }
        }
        Family::Orthogonal => return validate_orthogonal(s),
        Family::G2 | Family::F4 | Family::E7 | Family::E8 | Family::TriD4 => {
            let fq = require_q(&s)?;
            require_odd_q(fq, "exceptional")?;
            if s.family == Family::G2 && fq.q() < 3 {
                return Err(GroupError::NonSimple("G2(2)".into()));
            }
            s.n = None;
            s.eta = None;
            s.variant = Variant::Simple;
        }
        Family::E6 => {
            let fq = require_q(&s)?;
            require_odd_q(fq, "exceptional")?;
            s.n = None;
            s.eta = Some(s.eta.unwrap_or(Sign::Plus));
            s.variant = Variant::Simple;
        }
        Family::TwoG2 => {
            let fq = require_q(&s)?;
            if fq.p != 3 || fq.a % 2 == 0 || fq.a < 3 {
                return Err(invalid(
                    "2g2.field",
                    format!("2G2 needs q = 3^(2k+1) with k >= 1, got q={}", fq.q()),
                ));
            }
            s.n = None;
            s.eta = None;
            s.variant = Variant::Simple;
        }
    }
    Ok(s)
}

fn validate_linear(mut s: GroupSpec) -> Result<GroupSpec, GroupError> {
    let n = require_n(&s)?;
    let fq = require_q(&s)?;
    let q = fq.q();
    if n < 2 {
        return Err(invalid("sl.degree", format!("linear groups need n >= 2, got {n}")));
    }
    let eta = s.eta.unwrap_or(Sign::Plus);
    if s.variant == Variant::General && n != 2 {
        return Err(invalid("variant.general", "general variant exists only for GL2/GU2"));
    }
    // SU_2(q) is SL_2(q); GU_2 and GL_2 differ and keep their sign.
    let eta = if n == 2 && s.variant != Variant::General {
        Sign::Plus
    } else {
        eta
    };
    s.eta = Some(eta);
    if s.variant == Variant::Simple {
        let degenerate = (n == 2 && q <= 3) || (n == 3 && q == 2 && eta == Sign::Minus);
        if degenerate {
            return Err(GroupError::NonSimple(s.to_string()));
        }
    }
    Ok(s)
}

fn validate_orthogonal(s: GroupSpec) -> Result<GroupSpec, GroupError> {
    let n = require_n(&s)?;
    let fq = require_q(&s)?;
    let q = fq.q();
    if s.variant == Variant::General {
        return Err(invalid("variant.general", "general variant exists only for GL2/GU2"));
    }
    if n < 2 {
        return Err(invalid("o.degree", format!("orthogonal groups need n >= 2, got {n}")));
    }
    if n % 2 == 1 && s.eta.is_some() {
        return Err(invalid("o.sign", "odd dimension takes no sign"));
    }
    if n % 2 == 0 && s.eta.is_none() {
        return Err(invalid("o.sign", "even dimension needs a sign + or -"));
    }
    if !fq.is_odd() && !(n % 2 == 0 && n >= 8) {
        return Err(invalid(
            "q.odd",
            format!("orthogonal groups in dimension {n} are modelled over odd q only"),
        ));
    }
    let simple = s.variant == Variant::Simple;
    let eta = s.eta;
    let to = |t: GroupSpec| validate(&with_alias(t, &s));
    match (n, eta) {
        (2, _) => {
            if simple {
                return Err(GroupError::NonSimple(s.to_string()));
            }
            let e = eta.expect("checked");
            if e.q_minus(q) / 2 <= 1 {
                return Err(invalid("o.trivial", format!("{s} is trivial")));
            }
            Ok(s)
        }
        (3, _) => to(GroupSpec::psl(2, q, Sign::Plus).with_field(fq)),
        (4, Some(Sign::Plus)) => {
            if simple {
                return Err(GroupError::NonSimple(s.to_string()));
            }
            if q <= 3 {
                return Err(invalid("o.small-field", format!("{s} needs q >= 5")));
            }
            Ok(s)
        }
        (4, Some(Sign::Minus)) => to(GroupSpec::base_psl(2, fq.squared(), Sign::Plus)),
        // Ω_5 has trivial centre, so both variants are PSp_4.
        (5, _) => to(GroupSpec::psp(4, q)),
        (6, Some(e)) => {
            if simple {
                to(GroupSpec::base_psl(4, fq, e))
            } else {
                Ok(s)
            }
        }
        _ => Ok(s),
    }
}

impl GroupSpec {
    fn with_field(mut self, fq: FieldOrder) -> Self {
        self.q = Some(fq);
        self
    }

    fn base_psl(n: u32, fq: FieldOrder, eta: Sign) -> Self {
        GroupSpec {
            n: Some(n),
            q: Some(fq),
            eta: Some(eta),
            ..Self::base(Family::LinearUnitary, Variant::Simple)
        }
    }
}

/// π(G), the primes dividing |G|.
pub fn prime_spectrum(spec: &GroupSpec) -> PrimeSet {
    order(spec).order.primes()
}
