use super::{big, gcd_big, set_text, ClassifyError, Ctx, HallClassDescriptor, HallReport, Stmt};
use crate::arith::{factorize, pi_part, PrimeSet, Sign};
use crate::groups::{order, validate, Family, GroupSpec, Variant};
use num_bigint::BigUint;
use num_traits::{One, Zero};

const CONDITIONAL: &str =
    "defining characteristic: the case shapes are matched exactly; existence rests on the classification they come from";

fn pow(b: &BigUint, e: u32) -> BigUint {
    b.pow(e)
}

/// Order of the maximal split torus in a Borel subgroup of the isometry
/// group (exceptional groups: of the simple group).
fn torus_order(spec: &GroupSpec) -> Option<BigUint> {
    let q = spec.q();
    let qm1 = big(q) - 1u32;
    let qp1 = big(q) + 1u32;
    let q2 = big(q) * q - 1u32;
    let odd = q % 2 == 1;
    let n = spec.degree();
    let halve = |x: BigUint| if odd { x / 2u32 } else { x };
    Some(match spec.family {
        Family::LinearUnitary => match (spec.variant, spec.eta.unwrap_or(Sign::Plus)) {
            (Variant::General, Sign::Plus) => pow(&qm1, 2),
            (Variant::General, Sign::Minus) => q2,
            (_, Sign::Plus) => pow(&qm1, n - 1),
            (_, Sign::Minus) if n % 2 == 0 => pow(&q2, n / 2) / &qp1,
            (_, Sign::Minus) => pow(&q2, n / 2),
        },
        Family::Symplectic => pow(&qm1, n / 2),
        Family::Orthogonal => {
            let m = n / 2;
            match spec.eta {
                None => pow(&qm1, m) / 2u32,
                Some(Sign::Plus) => halve(pow(&qm1, m)),
                Some(Sign::Minus) => halve(pow(&qm1, m - 1) * &qp1),
            }
        }
        Family::G2 => pow(&qm1, 2),
        Family::F4 => pow(&qm1, 4),
        Family::E6 => match spec.eta.unwrap_or(Sign::Plus) {
            Sign::Plus => pow(&qm1, 6) / gcd_big(&big(3), &qm1),
            Sign::Minus => pow(&q2, 2) * pow(&qm1, 2) / gcd_big(&big(3), &qp1),
        },
        Family::E7 => pow(&qm1, 7) / gcd_big(&big(2), &qm1),
        Family::E8 => pow(&qm1, 8),
        Family::TriD4 => (big(q).pow(3u32) - 1u32) * &qm1,
        Family::TwoG2 => qm1,
        _ => return None,
    })
}

fn divides(a: &BigUint, b: &BigUint) -> bool {
    !a.is_zero() && (b % a).is_zero()
}

fn is_pi_number(n: &BigUint, pi: &PrimeSet) -> bool {
    pi_part(n, pi) == *n
}

/// Borel-type Hall subgroups: π∩π(S) ⊆ π(q−1) ∪ {p} and |S : B| a π'-number.
fn borel(ctx: &Ctx) -> Option<HallClassDescriptor> {
    let spec = &ctx.spec;
    let q = spec.q();
    let p = spec.p();
    let mut allowed = factorize(&(big(q) - 1u32)).primes();
    allowed.insert(p);
    let mut t = torus_order(spec)?;
    let classical_simple = spec.variant == Variant::Simple && !spec.family.is_exceptional();
    if classical_simple {
        let c = big(ctx.order.center_divisor);
        if !divides(&c, &t) {
            return None;
        }
        t /= c;
    }
    let g = ctx.order.order.value();
    let e = ctx.order.order.exponent(p);
    let unip = big(p).pow(e);
    let borel_order = &unip * &t;
    let s = Stmt::new().req(
        "π∩π(S) ⊆ π(q−1) ∪ {p}",
        format!("{} ⊆ {}", set_text(&ctx.inter), set_text(&allowed)),
        ctx.inter.is_subset(&allowed),
    );
    let s = s.req_with(|| {
        let ok = divides(&borel_order, g);
        let index = if ok { g / &borel_order } else { BigUint::zero() };
        let coprime = ok && pi_part(&index, &ctx.pi).is_one();
        (
            "|S : B| is a π'-number".into(),
            format!("|B| = {p}^{e}·{t}, |S : B| = {index}"),
            coprime,
        )
    });
    s.emit(
        "defining.borel",
        format!("Hall({p}^{e}:{t})"),
        1,
        "one class; Borel subgroups are conjugate",
    )
}

/// Orthogonal groups of plus or minus type in even characteristic: the
/// parabolic with Levi factor of the next smaller rank.
fn parabolic_orthogonal(ctx: &Ctx) -> Option<HallClassDescriptor> {
    let spec = &ctx.spec;
    let n2 = spec.degree();
    let eta = spec.eta?;
    if spec.family != Family::Orthogonal || spec.p() != 2 || n2 < 8 || n2 % 2 == 1 {
        return None;
    }
    let q = spec.q();
    let m = n2 / 2;
    let levi_spec = if m == 4 {
        GroupSpec::sl(4, q, eta)
    } else {
        GroupSpec::omega(n2 - 2, q, Some(eta))
    };
    let levi = order(&levi_spec).order;
    let levi_text = if m == 4 {
        format!("SL(4,{q}{})", if eta == Sign::Minus { ",-" } else { "" })
    } else {
        format!("Omega{}({},{q})", eta.symbol(), n2 - 2)
    };
    let qm1 = big(q) - 1u32;
    let eta_big = |x: BigUint, s: Sign| match s {
        Sign::Plus => x - 1u32,
        Sign::Minus => x + 1u32,
    };
    let index = eta_big(big(q).pow(m), eta) * eta_big(big(q).pow(m - 1), -eta) / &qm1;
    let s = Stmt::new().req(
        "π∩π(S) = π(D_{n−1}^η(q))",
        format!("{} = {}", set_text(&ctx.inter), set_text(&levi.primes())),
        ctx.inter == levi.primes(),
    );
    let s = s.req(
        "|S : P| is a π'-number",
        format!("|S : P| = {index}"),
        pi_part(&index, &ctx.pi).is_one(),
    );
    s.emit(
        "defining.orthogonal-parabolic",
        format!("{q}^{}:({levi_text} × Z({qm1}))", 2 * m - 2),
        1,
        "one class; parabolics of this type are conjugate",
    )
}

/// Block shapes of flag stabilisers in PSL_n(q) with their class counts.
fn linear_shapes(n: u32) -> Vec<(&'static str, Vec<u32>, u64, u32)> {
    let mut v = Vec::new();
    if n % 2 == 1 && crate::arith::is_prime_u64(n as u64) {
        v.push(("defining.point-hyperplane", vec![1, n - 1], 2, 2));
    }
    match n {
        4 => v.push(("defining.two-planes", vec![2, 2], 1, 1)),
        5 => {
            v.push(("defining.blocks-2-3", vec![2, 3], 2, 2));
            v.push(("defining.blocks-1-2-2", vec![1, 2, 2], 3, 3));
        }
        7 => v.push(("defining.blocks-3-4", vec![3, 4], 2, 2)),
        8 => v.push(("defining.blocks-4-4", vec![4, 4], 1, 1)),
        11 => v.push(("defining.blocks-5-6", vec![5, 6], 2, 2)),
        _ => {}
    }
    v
}

fn gl_order(n: u32, q: u64) -> BigUint {
    let qb = big(q);
    let mut o = qb.pow(n * (n - 1) / 2);
    for i in 1..=n {
        o *= qb.pow(i) - 1u32;
    }
    o
}

/// Flag stabilisers in PSL_n(q) that are Hall subgroups.
fn linear_parabolics(ctx: &Ctx) -> Vec<HallClassDescriptor> {
    let spec = &ctx.spec;
    if spec.family != Family::LinearUnitary || spec.eta != Some(Sign::Plus) || spec.variant == Variant::General {
        return Vec::new();
    }
    let n = spec.degree();
    let q = spec.q();
    let qm1 = big(q) - 1u32;
    let d = if spec.variant == Variant::Simple {
        ctx.order.center_divisor
    } else {
        1
    };
    let g = ctx.order.order.value();
    let mut out = Vec::new();
    for (case_id, blocks, k, orderings) in linear_shapes(n) {
        let sq: u32 = blocks.iter().map(|b| b * b).sum();
        let unip = (n * n - sq) / 2;
        let levi: BigUint = blocks.iter().map(|&b| gl_order(b, q)).product();
        let p_order = big(q).pow(unip) * levi / &qm1 / d;
        let index = g / &p_order;
        let p_primes = factorize(&p_order).primes();
        let shape: Vec<String> = blocks.iter().map(u32::to_string).collect();
        let s = Stmt::new().req(
            "π(P) ⊆ π",
            format!("|P| = {p_order}, π(P) = {}", set_text(&p_primes)),
            is_pi_number(&p_order, &ctx.pi),
        );
        let s = s.req(
            "|S : P| is a π'-number",
            format!("|S : P| = {index}"),
            pi_part(&index, &ctx.pi).is_one(),
        );
        let mut factors: Vec<String> = blocks
            .iter()
            .filter(|&&b| b > 1)
            .map(|&b| if b == 2 { format!("SL2({q})") } else { format!("SL({b},{q})") })
            .collect();
        let tori = blocks.len() - 1;
        if tori > 0 && q > 2 {
            factors.push(if tori == 1 { format!("Z({qm1})") } else { format!("Z({qm1})^{tori}") });
        }
        let structure = super::quotient(format!("{q}^{unip}:({})", factors.join(" × ")), d, &ctx.pi);
        let fusion = if k == 1 {
            format!("one class; block dimensions ({})", shape.join(", "))
        } else {
            format!(
                "{k} classes, one per ordering of the block dimensions ({}); {orderings} orderings",
                shape.join(", ")
            )
        };
        out.extend(s.emit(case_id, structure, k, fusion));
    }
    out
}

pub(crate) fn report(ctx: &Ctx) -> HallReport {
    let notes = vec![CONDITIONAL.to_string()];
    if let Some(d) = borel(ctx) {
        return ctx.exact(vec![d], notes);
    }
    if let Some(d) = parabolic_orthogonal(ctx) {
        return ctx.exact(vec![d], notes);
    }
    let lin = linear_parabolics(ctx);
    if !lin.is_empty() {
        return ctx.exact(lin, notes);
    }
    ctx.bounded("no defining-characteristic case shape matches; no exact answer is derived here")
}

/// Report on a Lie-type group when the characteristic lies in π and 2, 3 ∈ π.
pub fn classify_defining_char(spec: &GroupSpec, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    let spec = validate(spec)?;
    if !spec.family.is_lie_type() {
        return Err(ClassifyError::Scope(format!("{spec} is not of Lie type")));
    }
    if !pi.contains(spec.p()) {
        return Err(ClassifyError::Scope(format!("the characteristic {} is not in π", spec.p())));
    }
    if !pi.contains(2) || !pi.contains(3) {
        return Err(ClassifyError::Scope("needs 2, 3 ∈ π".into()));
    }
    super::classify(&spec, pi)
}
