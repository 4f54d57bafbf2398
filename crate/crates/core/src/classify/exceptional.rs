use super::{
    big, check_field, gcd_big, inter_is, part_is, q2m1, qm, require_cross, subset_cond, ClassifyError, Ctx,
    HallClassDescriptor, HallReport, Stmt,
};
use crate::arith::{epsilon, PrimeSet, Sign};
use crate::groups::{Family, GroupError, GroupSpec};

const ONE: &str = "one class";

fn contains_cond(stmt: Stmt, pi: &PrimeSet, want: &[u64]) -> Stmt {
    let text: Vec<String> = want.iter().map(u64::to_string).collect();
    stmt.req(
        format!("{} ∈ π", text.join(", ")),
        pi.braces(),
        want.iter().all(|&r| pi.contains(r)),
    )
}

pub(crate) fn descriptors(ctx: &Ctx) -> Vec<HallClassDescriptor> {
    let q = ctx.spec.q();
    let pi = &ctx.pi;
    let inter = &ctx.inter;
    let eps = epsilon(q).expect("odd q");
    let q_eps = qm(q, eps);
    let torus = || subset_cond(Stmt::new(), inter, "q−ε", &q_eps);
    let mut out = Vec::new();
    match ctx.spec.family {
        Family::G2 => {
            let s = inter_is(Stmt::new(), inter, &[2, 3, 7]);
            let s = part_is(s, "q²−1", &q2m1(q), &[2, 3, 7], 24);
            let q2 = big(q) * q;
            let s = part_is(s, "q⁴+q²+1", &(&q2 * &q2 + &q2 + 1u32), &[7], 7);
            out.extend(s.emit("g2.g2-of-2", "G2(2)", 1, ONE));
            out.extend(torus().emit("g2.torus", format!("Hall(Z({q_eps})^2.W(G2))"), 1, ONE));
        }
        Family::F4 => {
            out.extend(torus().emit("f4.torus", format!("Hall(Z({q_eps})^4.W(F4))"), 1, ONE));
        }
        Family::E6 => {
            let eta = ctx.spec.eta.unwrap_or(Sign::Plus);
            let sign = format!("η = {}, ε = {}", eta.symbol(), eps.symbol());
            let s = torus().req("η = ε", &sign, eta == eps);
            let q_eta = qm(q, eta);
            let c = gcd_big(&q_eta, &big(3));
            out.extend(contains_cond(s, pi, &[5]).emit(
                "e6.split-torus",
                format!("Hall(Z({q_eta})^6 / {c}.W(E6))"),
                1,
                ONE,
            ));
            let s = torus().req("η = −ε", &sign, eta == -eps);
            out.extend(s.emit(
                "e6.twisted-torus",
                format!("Hall(Z({})^2.Z({})^2.W(F4))", q2m1(q), qm(q, -eta)),
                1,
                ONE,
            ));
        }
        Family::E7 => {
            out.extend(contains_cond(torus(), pi, &[5, 7]).emit(
                "e7.torus",
                format!("Hall(Z({q_eps})^7 / 2.W(E7))"),
                1,
                ONE,
            ));
        }
        Family::E8 => {
            out.extend(contains_cond(torus(), pi, &[5, 7]).emit(
                "e8.torus",
                format!("Hall(Z({q_eps})^8.W(E8))"),
                1,
                ONE,
            ));
        }
        Family::TriD4 => {
            let q3 = big(q).pow(3u32);
            let q3e = match eps {
                Sign::Plus => q3 - 1u32,
                Sign::Minus => q3 + 1u32,
            };
            out.extend(torus().emit("3d4.torus", format!("Hall(Z({q_eps}).Z({q3e}).W(G2))"), 1, ONE));
        }
        _ => {}
    }
    out
}

/// ²G₂(q) with 2 ∈ π, 3 ∉ π. Two classes, told apart by their Sylow towers,
/// when π∩π(S) = {2,7} and 7 divides q+1 exactly once. Otherwise the criteria
/// are not encoded and `None` is returned.
pub(crate) fn ree_report(ctx: &Ctx) -> Option<HallReport> {
    let q = ctx.spec.q();
    let a = ctx.spec.q?.a;
    let n = (a - 1) / 2;
    let q1 = big(q) + 1u32;
    let s = inter_is(Stmt::new(), &ctx.inter, &[2, 7]);
    let s = s.req("7 | q+1", format!("{q1} mod 7 = {}", &q1 % 7u32), (&q1 % 7u32) == big(0));
    let s = s.req("n ≢ 3 (mod 7) for q = 3^(2n+1)", format!("n = {n}, n mod 7 = {}", n % 7), n % 7 != 3);
    if !s.holds() {
        return None;
    }
    let s2 = Stmt::new().req("π∩π(G) = {2,7}, 7 | q+1, n ≢ 3 (mod 7)", ctx.inter.braces(), true);
    let half = &q1 / 2u32;
    let classes = vec![
        s.emit(
            "ree.torus-normalizer",
            format!("Hall((2^2 × D({half})):3)"),
            1,
            "one class; Sylow tower 2 ≺ 7",
        )?,
        s2.emit("ree.frobenius-56", "2^3:7", 1, "one class; Sylow tower 7 ≺ 2, a Frobenius group")?,
    ];
    Some(ctx.exact(classes, Vec::new()))
}

/// Report on an exceptional group in cross characteristic with 2, 3 ∈ π.
/// `eta` is read only for E6.
pub fn classify_exceptional(
    family: Family,
    q: u64,
    eta: Option<Sign>,
    pi: &PrimeSet,
) -> Result<HallReport, ClassifyError> {
    if !family.is_exceptional() {
        return Err(ClassifyError::Invalid(GroupError::InvalidParameter {
            rule: "family.exceptional".into(),
            detail: format!("{family:?} is not an exceptional family"),
        }));
    }
    check_field(q)?;
    require_cross(q, pi)?;
    super::classify(&GroupSpec::exceptional(family, q, eta), pi)
}
