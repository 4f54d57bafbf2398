use super::sl2::{gl2_descriptors, k_gl2, sl2_descriptors};
use super::{
    big, check_field, congruent, inter_is, part_is, pp, q2m1, qm, quotient, require_cross, set_text, subset_cond,
    sym_hall, ClassifyError, Ctx, HallClassDescriptor, HallReport, Stmt,
};
use crate::arith::{factorial, factorize, r_part, PrimeSet, Sign};
use crate::groups::{order, GroupSpec, Variant};

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Plus => '+',
        Sign::Minus => '-',
    }
}

pub(crate) fn descriptors(ctx: &Ctx) -> (Vec<HallClassDescriptor>, Vec<String>) {
    let spec = &ctx.spec;
    let n = spec.degree();
    let q = spec.q();
    let eta = spec.eta.unwrap_or(Sign::Plus);
    let pi = &ctx.pi;
    let simple = spec.variant == Variant::Simple;
    if n == 2 {
        let d = match spec.variant {
            Variant::General => gl2_descriptors(q, eta, pi),
            _ => sl2_descriptors(q, pi, simple),
        };
        return (d, Vec::new());
    }
    let iso = order(&GroupSpec::sl(n, q, eta)).order;
    let inter = pi.intersection(&iso.primes());
    let center = if simple { ctx.order.center_divisor } else { 1 };
    let q_eta = qm(q, eta);
    let n64 = n as u64;
    let mut out = Vec::new();
    let mut notes = Vec::new();

    // torus normaliser Z^(n-1).Sym(n)
    let sym_n = sym_hall(n, pi);
    let stmt = Stmt::new()
        .req(
            "q ≡ η (mod 12), or n = 3 and q ≡ η (mod 4)",
            format!("q mod 12 = {}, η = {}", q % 12, eta.symbol()),
            q % 12 == eta.residue(12) || (n == 3 && q % 4 == eta.residue(4)),
        )
        .req("Sym(n) ∈ E_π", format!("n = {n}"), sym_n.is_some());
    let n_fact = factorial(n64);
    let torus_primes = super::primes_of(&q_eta).union(&factorize(&n_fact).primes());
    let stmt = stmt.req(
        "π∩π(G) ⊆ π(q−η) ∪ π(n!)",
        format!("{} ⊆ {}", set_text(&inter), set_text(&torus_primes)),
        inter.is_subset(&torus_primes),
    );
    let stmt = stmt.req_with(|| {
        let extra = pi
            .intersection(&factorize(&n_fact).primes())
            .difference(&super::primes_of(&q_eta));
        let bad: Vec<u64> = extra
            .small()
            .into_iter()
            .filter(|&r| r_part(iso.value(), r) != r_part(&n_fact, r))
            .collect();
        (
            "|G|_r = |Sym(n)|_r for r ∈ (π∩π(n!)) ∖ π(q−η)".into(),
            format!("r ∈ {}, failing {:?}", set_text(&extra), bad),
            bad.is_empty(),
        )
    });
    out.extend(stmt.emit(
        "linear.torus-normalizer",
        quotient(format!("Hall(Z({q_eta})^{}.Sym({n}))", n - 1), center, pi),
        1,
        "one class",
    ));

    // GL2 blocks: (GL2 wr Sym(m)) × Z, intersected with SL
    let m = n / 2;
    let k = n % 2;
    let sym_m = sym_hall(m, pi);
    let kg = k_gl2(q, eta, pi);
    let stmt = congruent(Stmt::new(), q, -eta.value(), 3, "−η");
    let stmt = subset_cond(stmt, &inter, "q²−1", &q2m1(q))
        .req("Sym(m) ∈ E_π", format!("m = {m}"), sym_m.is_some())
        .req(
            "GL2^η(q) ∈ E_π",
            format!("k_π(GL2^η({q})) = {kg}"),
            kg >= 1,
        );
    let block_holds = stmt.holds();
    let t = sym_m.as_ref().map(|h| h.orbits).unwrap_or(0);
    let mut block_count = kg.pow(t);
    let gl = format!("GL2({q},{})", sign_char(eta));
    let block_structure = if k == 1 {
        format!("Hall(({gl} wr Sym({m})) × Z({q_eta}) / {q_eta})")
    } else {
        format!("Hall(({gl} wr Sym({m})) / {q_eta})")
    };

    // n = 11 exceptional block shape
    let z = pp(&q_eta, &[2]);
    let eleven = if n == 11 {
        let s = inter_is(Stmt::new(), &inter, &[2, 3]);
        let s = part_is(s, "q²−1", &q2m1(q), &[2, 3], 24);
        let s = congruent(s, q, -eta.value(), 3, "−η");
        let s = congruent(s, q, eta.value(), 4, "η");
        s.emit(
            "linear.dim11-mixed",
            quotient(
                format!("(((Z({z})∘(2.Sym4)) wr Sym4) × (Z({z}) wr Sym3)) / {z}"),
                center,
                pi,
            ),
            1,
            "one class",
        )
    } else {
        None
    };
    if eleven.is_some() && block_holds {
        if block_count != 2 {
            notes.push(format!(
                "GL2-block classes set to 2 (composition gives {block_count}) alongside the dimension-11 shape"
            ));
        }
        block_count = 2;
    }
    let fusion = match block_count {
        1 => "one class".to_string(),
        c => format!("{c} classes, k_π(GL2^η(q))^t with t = {t} orbits of the Sym(m) Hall"),
    };
    out.extend(stmt.emit("linear.gl2-blocks", quotient(block_structure, center, pi), block_count, fusion));
    out.extend(eleven);

    // n = 4 exotic 2-local
    if n == 4 {
        let s = inter_is(Stmt::new(), &inter, &[2, 3, 5]);
        let s = congruent(s, q, 5 * eta.value(), 8, "5η");
        let s = part_is(s, "q+η", &qm(q, -eta), &[3], 3);
        let s = part_is(s, "q²+1", &(big(q) * q + 1u32), &[5], 5);
        out.extend(s.emit(
            "linear.dim4-extraspecial",
            quotient("4.2^4.Alt6".to_string(), center, pi),
            2,
            "two classes, interchanged by GL4^η(q)",
        ));
    }
    (out, notes)
}

/// Report on PSL_n^η(q) in cross characteristic with 2, 3 ∈ π.
pub fn classify_linear_unitary(n: u32, q: u64, eta: Sign, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    check_field(q)?;
    require_cross(q, pi)?;
    super::classify(&GroupSpec::psl(n, q, eta), pi)
}
