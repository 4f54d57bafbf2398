use super::{set_text, ClassifyError, Ctx, HallReport, Stmt};
use crate::arith::{factorial, factorize, PrimeSet};
use crate::groups::{Family, GroupSpec};

/// A π-Hall subgroup of Sym(n) and its intersection with Alt(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymHall {
    pub case_id: &'static str,
    pub sym_structure: String,
    pub alt_structure: String,
    /// Orbits of the Hall subgroup on the n points.
    pub orbits: u32,
}

fn digit_sum(mut n: u64, r: u64) -> u32 {
    let mut s = 0;
    while n > 0 {
        s += (n % r) as u32;
        n /= r;
    }
    s
}

/// The π-Hall subgroup of Sym(n), if one exists. Total for all π.
pub fn sym_hall(n: u32, pi: &PrimeSet) -> Option<SymHall> {
    let n64 = n as u64;
    let order = factorize(&factorial(n64));
    let all = order.primes();
    let inter = pi.intersection(&all);
    let hall = |case_id, sym: String, alt: String, orbits| {
        Some(SymHall {
            case_id,
            sym_structure: sym,
            alt_structure: alt,
            orbits,
        })
    };
    if all.is_subset(pi) {
        let orbits = if n == 0 { 0 } else { 1 };
        return hall("sym.whole", format!("Sym({n})"), format!("Alt({n})"), orbits);
    }
    if inter.len() <= 1 {
        return match inter.small().first() {
            Some(&r) => {
                let a = order.exponent(r);
                let alt_a = if r == 2 { a - 1 } else { a };
                hall(
                    "sym.sylow",
                    format!("{r}^{a}"),
                    if alt_a == 0 { "1".into() } else { format!("{r}^{alt_a}") },
                    digit_sum(n64, r),
                )
            }
            None => hall("sym.trivial", "1".into(), "1".into(), n),
        };
    }
    if crate::arith::is_prime_u64(n64) && n >= 5 {
        let below = factorize(&factorial(n64 - 1)).primes();
        if inter == below {
            let m = n - 1;
            return hall("sym.point-stabilizer", format!("Sym({m})"), format!("Alt({m})"), 2);
        }
    }
    if inter.is(&[2, 3]) {
        return match n {
            7 => hall(
                "sym.two-blocks",
                "Sym3 × Sym4".into(),
                "(Sym3 × Sym4) / 2".into(),
                2,
            ),
            8 => hall(
                "sym.imprimitive",
                "Sym4 wr Sym2".into(),
                "(Sym4 wr Sym2) / 2".into(),
                1,
            ),
            _ => None,
        };
    }
    None
}

pub(crate) fn report(ctx: &Ctx) -> HallReport {
    let n = ctx.spec.degree();
    let alt = ctx.spec.family == Family::Alt;
    let found = sym_hall(n, &ctx.pi);
    let classes = found
        .map(|h| {
            let structure = if alt { h.alt_structure } else { h.sym_structure };
            let case_id = if alt {
                h.case_id.replacen("sym.", "alt.", 1)
            } else {
                h.case_id.to_string()
            };
            Stmt::new()
                .req(
                    "Sym(n) has a Hall subgroup for π∩π(G)",
                    format!("n = {n}, π∩π(G) = {}", set_text(&ctx.inter)),
                    true,
                )
                .emit(&case_id, structure, 1, "one class, also under Sym(n)")
                .expect("condition holds")
        })
        .into_iter()
        .collect();
    ctx.exact(classes, Vec::new())
}

pub fn classify_sym(n: u32, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    super::classify(&GroupSpec::sym(n), pi)
}

pub fn classify_alt(n: u32, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    super::classify(&GroupSpec::alt(n), pi)
}
