use super::sl2::{k_sl2, sl2_inter};
use super::{check_field, q2m1, quotient, require_cross, subset_cond, sym_hall, ClassifyError, Ctx, HallClassDescriptor, HallReport, Stmt};
use crate::arith::PrimeSet;
use crate::groups::{order, GroupSpec, Variant};

pub(crate) fn descriptors(ctx: &Ctx) -> Vec<HallClassDescriptor> {
    let q = ctx.spec.q();
    let n = ctx.spec.degree() / 2;
    let pi = &ctx.pi;
    let inter = pi.intersection(&order(&GroupSpec::sp(2 * n, q)).order.primes());
    let center = if ctx.spec.variant == Variant::Simple {
        ctx.order.center_divisor
    } else {
        1
    };
    let sym = sym_hall(n, pi);
    let k = k_sl2(q, pi);
    let stmt = Stmt::new()
        .req("Sym(n) ∈ E_π", format!("n = {n}"), sym.is_some())
        .req(
            "SL2(q) ∈ E_π",
            format!("k_π(SL2({q})) = {k} on π∩π(SL2) = {}", sl2_inter(q, pi).braces()),
            k >= 1,
        );
    let stmt = subset_cond(stmt, &inter, "q²−1", &q2m1(q));
    let t = sym.map(|h| h.orbits).unwrap_or(0);
    let count = k.pow(t);
    let fusion = if count == 1 {
        "one class".to_string()
    } else {
        format!("{count} classes, k_π(SL2(q))^t with t = {t} orbits of the Sym(n) Hall; conjugacy is decided inside SL2(q) wr Sym(n)")
    };
    stmt.emit(
        "symplectic.sl2-wreath",
        quotient(format!("Hall(SL2({q})) wr Hall(Sym({n}))"), center, pi),
        count,
        fusion,
    )
    .into_iter()
    .collect()
}

/// Report on PSp_{n2}(q) in cross characteristic with 2, 3 ∈ π.
pub fn classify_symplectic(n2: u32, q: u64, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    check_field(q)?;
    require_cross(q, pi)?;
    super::classify(&GroupSpec::psp(n2, q), pi)
}
