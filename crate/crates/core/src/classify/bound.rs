use super::{classify, ClassifyError, HallReport, KPi, Regime};
use crate::arith::PrimeSet;
use crate::groups::{Family, GroupSpec};
use serde::{Deserialize, Serialize};

/// How much of Out(S) the almost simple group G is allowed to contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OuterDescription {
    /// G = S.
    Trivial,
    DiagonalAndField,
    Any,
}

impl std::str::FromStr for OuterDescription {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(OuterDescription::Trivial),
            "diagonal-and-field" => Ok(OuterDescription::DiagonalAndField),
            "any" => Ok(OuterDescription::Any),
            other => Err(format!("unknown outer description `{other}`")),
        }
    }
}

/// Possible values of k_π^G(S) for S ≤ G ≤ Aut(S).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpiBound {
    pub set: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<u64>,
    pub reason: String,
}

impl KpiBound {
    fn exact(k: u64, reason: &str) -> Self {
        KpiBound {
            set: vec![k],
            exact: Some(k),
            reason: reason.to_string(),
        }
    }

    fn set(set: Vec<u64>, reason: &str) -> Self {
        let exact = (set.len() == 1).then(|| set[0]);
        KpiBound {
            set,
            exact,
            reason: reason.to_string(),
        }
    }
}

/// The set k_π^G(S) can take over all almost simple G, by regime.
pub fn regime_bound(regime: Regime) -> Vec<u64> {
    match regime {
        Regime::NoTwo => vec![0, 1],
        Regime::TwoNotThree => vec![0, 1, 2],
        Regime::Cross | Regime::Defining => vec![0, 1, 2, 3, 4, 9],
        Regime::Whole | Regime::Sylow => vec![1],
    }
}

/// Bound on k_π^G(S), refined by the simple group's own report.
pub fn kpi_bound_almost_simple(
    spec: &GroupSpec,
    pi: &PrimeSet,
    outer: OuterDescription,
) -> Result<(KpiBound, HallReport), ClassifyError> {
    let report = classify(spec, pi)?;
    let regime = report.scope_tag;
    let set = regime_bound(regime);
    let bound = match (&report.k_pi, regime) {
        (_, Regime::Whole | Regime::Sylow) => KpiBound::exact(1, "G has a unique class, induced from S"),
        (KPi::Exact(k), _) if outer == OuterDescription::Trivial => KpiBound::exact(*k, "G = S"),
        (KPi::Exact(k), _) if report.spec.family == Family::Alt && report.spec.degree() != 6 => {
            KpiBound::exact(*k, "Sym(n) Hall subgroups meet Alt(n) in its Hall subgroups")
        }
        (KPi::Exact(0), _) => KpiBound::exact(0, "S has no π-Hall subgroups"),
        (KPi::Exact(9), _) if report.spec.family == Family::Symplectic => {
            KpiBound::set(vec![1, 9], "symplectic group with nine classes")
        }
        (KPi::Exact(1), _) => KpiBound::exact(1, "S has one class"),
        (KPi::Exact(k), _) => KpiBound::set(
            set.into_iter().filter(|x| (1..=*k).contains(x)).collect(),
            "induced classes are a nonempty subset of the classes of S",
        ),
        (KPi::Bound(b), _) => KpiBound::set(
            set.into_iter().filter(|x| b.contains(x)).collect(),
            "regime bound",
        ),
    };
    Ok((bound, report))
}
