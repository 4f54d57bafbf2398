use super::{
    big, check_field, congruent, inter_is, part_is, q2m1, qm, quotient, require_cross, subset_cond, sym_hall,
    ClassifyError, Ctx, HallClassDescriptor, HallReport, Stmt, Verdict,
};
use crate::arith::{epsilon, pi_part, PrimeSet, Sign};
use crate::groups::{order, GroupError, GroupSpec, Variant};
use num_bigint::BigUint;

const SO_SWAP: &str = "two classes, interchanged by the special orthogonal group";
const DEG4_FOUR: &str =
    "four classes; an element of the full orthogonal group outside Ω induces an involution with cycle type (ij)(kl) on them";

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Plus => '+',
        Sign::Minus => '-',
    }
}

/// |G|_π equals the given factorisation.
fn hall_order_is(stmt: Stmt, g_order: &BigUint, pi: &PrimeSet, want: &[(u64, u32)]) -> Stmt {
    let target: BigUint = want.iter().map(|&(p, e)| big(p).pow(e)).product();
    let got = pi_part(g_order, pi);
    let text: Vec<String> = want.iter().map(|(p, e)| format!("{p}^{e}")).collect();
    stmt.req(format!("|G|_π = {}", text.join("·")), got.to_string(), got == target)
}

/// Hall classes of Ω_n^η(q) (or of PΩ when `simple`), 2, 3 ∈ π, q odd and
/// coprime to π.
pub(crate) fn table(n: u32, q: u64, eta: Option<Sign>, pi: &PrimeSet, simple: bool) -> Vec<HallClassDescriptor> {
    let omega = order(&GroupSpec::omega(n, q, eta)).order;
    let inter = pi.intersection(&omega.primes());
    let center = if simple && n % 2 == 0 {
        order(&GroupSpec::orthogonal(n, q, eta)).center_divisor
    } else {
        1
    };
    let eps = epsilon(q).expect("odd q");
    let q_eps = qm(q, eps);
    let q_peps = qm(q, -eps);
    let sq = q2m1(q);
    let new = Stmt::new;
    let mut out: Vec<Option<HallClassDescriptor>> = Vec::new();
    let fin = |s: String| quotient(s, center, pi);
    match (n, eta) {
        (3, _) => {
            out.push(subset_cond(new(), &inter, "q−ε", &q_eps).emit(
                "orth3.dihedral",
                format!("Hall(D({q_eps}))"),
                1,
                "one class, stabilising a 1 + 2 decomposition",
            ));
            out.push(part_is(inter_is(new(), &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 24).emit(
                "orth3.tetrahedral",
                "Alt4",
                1,
                "one class",
            ));
            out.push(part_is(inter_is(new(), &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 48).emit(
                "orth3.octahedral",
                "Sym4",
                2,
                SO_SWAP,
            ));
            out.push(part_is(inter_is(new(), &inter, &[2, 3, 5]), "q²−1", &sq, &[2, 3, 5], 120).emit(
                "orth3.icosahedral",
                "Alt5",
                2,
                SO_SWAP,
            ));
        }
        (4, Some(Sign::Plus)) => {
            out.push(subset_cond(new(), &inter, "q−ε", &q_eps).emit(
                "orth4p.torus",
                format!("Hall((2.D({q_eps}))∘(2.D({q_eps})))"),
                1,
                "one class",
            ));
            let two_three = || inter_is(new(), &inter, &[2, 3]);
            out.push(part_is(two_three(), "q²−1", &sq, &[2, 3], 24).emit(
                "orth4p.tetrahedral",
                "SL2(3)∘SL2(3)",
                1,
                "one class",
            ));
            out.push(part_is(two_three(), "q−ε", &q_eps, &[2, 3], 12).emit(
                "orth4p.dihedral-tetrahedral",
                "(2.D(12))∘SL2(3)",
                2,
                "two classes, fixed by SO but interchanged by the full orthogonal group",
            ));
            out.push(part_is(two_three(), "q²−1", &sq, &[2, 3], 48).emit(
                "orth4p.octahedral",
                "(2.Sym4)∘(2.Sym4)",
                4,
                DEG4_FOUR,
            ));
            out.push(part_is(two_three(), "q−ε", &q_eps, &[2, 3], 24).emit(
                "orth4p.dihedral-octahedral",
                "(2.D(24))∘(2.Sym4)",
                4,
                DEG4_FOUR,
            ));
            let two_three_five = || inter_is(new(), &inter, &[2, 3, 5]);
            out.push(part_is(two_three_five(), "q²−1", &sq, &[2, 3, 5], 120).emit(
                "orth4p.icosahedral",
                "SL2(5)∘SL2(5)",
                4,
                DEG4_FOUR,
            ));
            out.push(part_is(two_three_five(), "q−ε", &q_eps, &[2, 3, 5], 60).emit(
                "orth4p.dihedral-icosahedral",
                "(2.D(60))∘SL2(5)",
                4,
                DEG4_FOUR,
            ));
        }
        (4, Some(Sign::Minus)) => {
            out.push(subset_cond(new(), &inter, "q²−1", &sq).emit(
                "orth4m.dihedral",
                format!("Hall(D({sq}))"),
                1,
                "one class",
            ));
            out.push(part_is(inter_is(new(), &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 24).emit(
                "orth4m.octahedral",
                "Sym4",
                2,
                "two classes, interchanged by the similarity group",
            ));
        }
        (5, _) => {
            out.push(subset_cond(new(), &inter, "q−ε", &q_eps).emit(
                "orth5.torus",
                format!("Hall(((2.D({q_eps}))∘(2.D({q_eps}))).2)"),
                1,
                "one class",
            ));
            out.push(part_is(inter_is(new(), &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 24).emit(
                "orth5.tetrahedral",
                "((2.Alt4)∘(2.Alt4)).2",
                1,
                "one class",
            ));
            out.push(part_is(inter_is(new(), &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 48).emit(
                "orth5.octahedral",
                "((2.Sym4)∘(2.Sym4)).2",
                2,
                SO_SWAP,
            ));
            out.push(part_is(inter_is(new(), &inter, &[2, 3, 5]), "q²−1", &sq, &[2, 3, 5], 120).emit(
                "orth5.icosahedral",
                "(SL2(5)∘SL2(5)).2",
                2,
                SO_SWAP,
            ));
        }
        (6, Some(eta)) => {
            let d_minus = big(2) * &q_eps;
            let d_plus = big(2) * &q_peps;
            let s = new().req("η = ε", format!("η = {}, ε = {}", eta.symbol(), eps.symbol()), eta == eps);
            out.push(subset_cond(s, &inter, "q−ε", &q_eps).emit(
                "orth6.split-torus",
                fin(format!("Hall(D({d_minus}) wr Sym(3) / 4)")),
                1,
                "one class",
            ));
            let s = new().req("η = −ε", format!("η = {}, ε = {}", eta.symbol(), eps.symbol()), eta == -eps);
            out.push(subset_cond(s, &inter, "q−ε", &q_eps).emit(
                "orth6.mixed-torus",
                fin(format!("Hall(D({d_minus}) wr Sym(2) × D({d_plus}) / 4)")),
                1,
                "one class",
            ));
            let q_eta = qm(q, eta);
            let s = congruent(new(), q, -eta.value(), 3, "−η");
            let s = part_is(inter_is(s, &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 24);
            out.push(s.emit(
                "orth6.gl2-blocks",
                fin(format!("Hall((GL2({q},{}) wr Sym(2)) / {q_eta}) / 2", sign_char(eta))),
                1,
                "one class",
            ));
            let s = new().req("η = ε", format!("η = {}, ε = {}", eta.symbol(), eps.symbol()), eta == eps);
            let s = s.req(
                "q ≡ ±3 (mod 8)",
                format!("{q} ≡ {} (mod 8)", q % 8),
                q % 8 == 3 || q % 8 == 5,
            );
            let s = part_is(inter_is(s, &inter, &[2, 3, 5]), "q²−1", &sq, &[2, 3], 24);
            let s = part_is(s, "q²+1", &(big(q) * q + 1u32), &[5], 5);
            let s = congruent(s, q, -eta.value(), 3, "−η");
            out.push(s.emit(
                "orth6.extraspecial",
                fin("2^5.Alt6".into()),
                2,
                "two classes, fixed by the orthogonal group and interchanged by the similarity group",
            ));
        }
        _ if n >= 7 => {
            let m = n / 2;
            let d_minus = big(2) * &q_eps;
            let d_plus = big(2) * &q_peps;
            let base = || {
                let s = subset_cond(new(), &inter, "q−ε", &q_eps);
                congruent(s, q, eps.value(), 12, "ε")
            };
            let sym_cond = |s: Stmt, k: u32| {
                s.req(
                    format!("Sym({k}) ∈ E_π"),
                    format!("m = {k}"),
                    sym_hall(k, pi).is_some(),
                )
            };
            if n % 2 == 1 {
                out.push(sym_cond(base(), m).emit(
                    "orth.odd-torus",
                    fin(format!("Hall(D({d_minus}) wr Sym({m}) × 2 / 4)")),
                    1,
                    "one class",
                ));
            } else {
                let eta = eta.expect("even dimension carries a sign");
                let target = eps.pow(m as u64);
                let s = base().req(
                    "η = ε^m",
                    format!("η = {}, ε^m = {}", eta.symbol(), target.symbol()),
                    eta == target,
                );
                out.push(sym_cond(s, m).emit(
                    "orth.even-split-torus",
                    fin(format!("Hall(D({d_minus}) wr Sym({m}) / 4)")),
                    1,
                    "one class",
                ));
                let s = base().req(
                    "η = −ε^m",
                    format!("η = {}, ε^m = {}", eta.symbol(), target.symbol()),
                    eta == -target,
                );
                out.push(sym_cond(s, m - 1).emit(
                    "orth.even-mixed-torus",
                    fin(format!("Hall(D({d_minus}) wr Sym({}) × D({d_plus}) / 4)", m - 1)),
                    1,
                    "one class",
                ));
            }
            let small = |s: Stmt| {
                let s = inter_is(s, &inter, &[2, 3]);
                let s = congruent(s, q, eps.value(), 12, "ε");
                part_is(s, "q²−1", &sq, &[2, 3], 24)
            };
            if n == 11 {
                out.push(small(new()).emit(
                    "orth.dim11-mixed",
                    fin(format!("Hall((D({d_minus}) wr Sym(4)) × (2 wr Sym(3)) / 4)")),
                    1,
                    "one class",
                ));
            }
            if n == 12 && eta == Some(Sign::Minus) {
                out.push(small(new()).emit(
                    "orth.dim12-mixed",
                    fin(format!("Hall((D({d_minus}) wr Sym(4)) × (2 wr Sym(3)) × 2 / 4)")),
                    2,
                    "two classes, interchanged by the similarity group",
                ));
            }
            let g = omega.value();
            if n == 7 {
                let s = hall_order_is(inter_is(new(), &inter, &[2, 3, 5, 7]), g, pi, &[(2, 9), (3, 4), (5, 1), (7, 1)]);
                out.push(s.emit("orth.dim7-omega7-2", fin("Omega7(2)".into()), 2, SO_SWAP));
            }
            if n == 8 && eta == Some(Sign::Plus) {
                let s = hall_order_is(inter_is(new(), &inter, &[2, 3, 5, 7]), g, pi, &[(2, 13), (3, 5), (5, 2), (7, 1)]);
                out.push(s.emit(
                    "orth.dim8-omega8-2",
                    fin("2.Omega8+(2)".into()),
                    4,
                    "four classes, permuted as Sym(4) in its natural action by diagonal and graph automorphisms",
                ));
            }
            if n == 9 {
                let s = hall_order_is(inter_is(new(), &inter, &[2, 3, 5, 7]), g, pi, &[(2, 14), (3, 5), (5, 2), (7, 1)]);
                out.push(s.emit("orth.dim9-omega8-2", fin("2.Omega8+(2).2".into()), 2, SO_SWAP));
            }
        }
        _ => {}
    }
    out.into_iter().flatten().collect()
}

pub(crate) fn descriptors(ctx: &Ctx) -> Vec<HallClassDescriptor> {
    let s = &ctx.spec;
    table(s.degree(), s.q(), s.eta, &ctx.pi, s.variant == Variant::Simple)
}

/// Ω_2^η(q) is cyclic, so its Hall subgroup is unique.
pub(crate) fn cyclic_report(ctx: &Ctx) -> HallReport {
    if let Some(r) = ctx.trivial() {
        return r;
    }
    let m = ctx.order.order.value().clone();
    let d = Stmt::new()
        .req("G is cyclic", format!("|G| = {m}"), true)
        .emit("orth2.cyclic", format!("Hall(Z({m}))"), 1, "unique, normal");
    let mut r = ctx.exact(d.into_iter().collect(), Vec::new());
    r.d_pi = Verdict::Yes;
    r
}

/// Report straight from the orthogonal tables, without rewriting small
/// dimensions to linear or symplectic groups. Reports on PΩ, except for
/// n = 2 and Ω_4^+ which are not simple and are reported on Ω.
pub fn classify_orthogonal(n: u32, q: u64, eta: Option<Sign>, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    check_field(q)?;
    require_cross(q, pi)?;
    let mismatch = |detail: &str| {
        ClassifyError::Invalid(GroupError::InvalidParameter {
            rule: "o.sign".into(),
            detail: detail.into(),
        })
    };
    if n < 2 {
        return Err(mismatch("orthogonal groups need n >= 2"));
    }
    match (n % 2, eta) {
        (1, Some(_)) => return Err(mismatch("odd dimension takes no sign")),
        (0, None) => return Err(mismatch("even dimension needs a sign")),
        _ => {}
    }
    let simple = !(n == 2 || (n == 4 && eta == Some(Sign::Plus)));
    let spec = if simple {
        GroupSpec::orthogonal(n, q, eta)
    } else {
        GroupSpec::omega(n, q, eta)
    };
    if n == 2 && qm(q, eta.expect("checked")) <= big(2) {
        return Err(mismatch("Ω_2 is trivial here"));
    }
    if n == 4 && !simple && q <= 3 {
        return Err(mismatch("Ω_4^+ needs q >= 5"));
    }
    let ctx = Ctx::new(spec, pi);
    if n == 2 {
        return Ok(cyclic_report(&ctx));
    }
    if let Some(r) = ctx.trivial() {
        return Ok(r);
    }
    let classes = table(n, q, eta, pi, simple);
    Ok(ctx.exact(classes, Vec::new()))
}
