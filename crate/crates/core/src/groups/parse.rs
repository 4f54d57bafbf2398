use super::{Family, FieldOrder, GroupError, GroupSpec, Sporadic, Variant};
use crate::arith::Sign;

fn perr(msg: impl Into<String>) -> GroupError {
    GroupError::Parse(msg.into())
}

fn parse_uint(text: &str) -> Result<u64, GroupError> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| perr(format!("`{}` is not a non-negative integer", text.trim())))
}

fn parse_q(text: &str) -> Result<FieldOrder, GroupError> {
    let t = text.trim();
    if let Some((p, a)) = t.split_once('^') {
        let p = parse_uint(p)?;
        let a = parse_uint(a)?;
        let a = u32::try_from(a).map_err(|_| perr("field exponent too large"))?;
        FieldOrder::from_parts(p, a)
    } else {
        FieldOrder::new(parse_uint(t)?)
    }
}

fn parse_sign(text: &str) -> Result<Sign, GroupError> {
    match text.trim() {
        "+" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        other => Err(perr(format!("`{other}` is not a sign (+ or -)"))),
    }
}

fn parse_degree(text: &str) -> Result<u32, GroupError> {
    u32::try_from(parse_uint(text)?).map_err(|_| perr("degree too large"))
}

/// Parses the textual group grammar (`PSL(4,7,-)`, `O+(12,7)`, `M23`, ...).
/// The result is not yet validated.
pub fn parse_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(perr("empty group description"));
    }
    let Some(open) = t.find('(') else {
        return Sporadic::from_name(t)
            .map(GroupSpec::sporadic)
            .ok_or_else(|| perr(format!("unknown group `{t}`")));
    };
    if !t.ends_with(')') {
        return Err(perr(format!("missing `)` in `{t}`")));
    }
    let head = t[..open].trim();
    let args: Vec<&str> = t[open + 1..t.len() - 1].split(',').map(str::trim).collect();
    let arity = |lo: usize, hi: usize| -> Result<(), GroupError> {
        if args.len() < lo || args.len() > hi || args.iter().any(|a| a.is_empty()) {
            Err(perr(format!("`{head}` takes {lo}..={hi} arguments, got `{t}`")))
        } else {
            Ok(())
        }
    };
    let lie = |family, n: Option<u32>, q: FieldOrder, eta, variant| GroupSpec {
        family,
        n,
        q: Some(q),
        eta,
        variant,
        sporadic: None,
        aliases: Vec::new(),
    };
    let opt_sign = |idx: usize| -> Result<Sign, GroupError> {
        args.get(idx).map(|s| parse_sign(s)).unwrap_or(Ok(Sign::Plus))
    };
    match head {
        "Alt" | "A" => {
            arity(1, 1)?;
            Ok(GroupSpec::alt(parse_degree(args[0])?))
        }
        "Sym" | "S" => {
            arity(1, 1)?;
            Ok(GroupSpec::sym(parse_degree(args[0])?))
        }
        "PSL" | "SL" | "PSU" | "SU" => {
            arity(2, 3)?;
            let unitary = head.ends_with('U');
            if unitary && args.len() == 3 {
                return Err(perr(format!("`{head}` takes no sign argument")));
            }
            let eta = if unitary { Sign::Minus } else { opt_sign(2)? };
            let variant = if head.starts_with('P') { Variant::Simple } else { Variant::Isometry };
            Ok(lie(
                Family::LinearUnitary,
                Some(parse_degree(args[0])?),
                parse_q(args[1])?,
                Some(eta),
                variant,
            ))
        }
        "GL" | "GU" => {
            let eta = if head == "GU" {
                arity(2, 2)?;
                Sign::Minus
            } else {
                arity(2, 3)?;
                opt_sign(2)?
            };
            Ok(lie(
                Family::LinearUnitary,
                Some(parse_degree(args[0])?),
                parse_q(args[1])?,
                Some(eta),
                Variant::General,
            ))
        }
        "Sp" | "PSp" => {
            arity(2, 2)?;
            let variant = if head == "PSp" { Variant::Simple } else { Variant::Isometry };
            Ok(lie(
                Family::Symplectic,
                Some(parse_degree(args[0])?),
                parse_q(args[1])?,
                None,
                variant,
            ))
        }
        "O" | "O+" | "O-" | "Omega" | "Omega+" | "Omega-" | "POmega" | "POmega+" | "POmega-" => {
            arity(2, 2)?;
            let eta = match head.chars().last() {
                Some('+') => Some(Sign::Plus),
                Some('-') => Some(Sign::Minus),
                _ => None,
            };
            let variant = if head.starts_with("Omega") { Variant::Isometry } else { Variant::Simple };
            Ok(lie(
                Family::Orthogonal,
                Some(parse_degree(args[0])?),
                parse_q(args[1])?,
                eta,
                variant,
            ))
        }
        "E6" | "E6-" | "2E6" => {
            let eta = if head == "E6" {
                arity(1, 2)?;
                opt_sign(1)?
            } else {
                arity(1, 1)?;
                Sign::Minus
            };
            Ok(lie(Family::E6, None, parse_q(args[0])?, Some(eta), Variant::Simple))
        }
        "G2" | "F4" | "E7" | "E8" | "3D4" | "2G2" => {
            arity(1, 1)?;
            let family = match head {
                "G2" => Family::G2,
                "F4" => Family::F4,
                "E7" => Family::E7,
                "E8" => Family::E8,
                "3D4" => Family::TriD4,
                _ => Family::TwoG2,
            };
            Ok(lie(family, None, parse_q(args[0])?, None, Variant::Simple))
        }
        other => Err(perr(format!("unknown family `{other}`"))),
    }
}
