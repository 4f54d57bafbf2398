use super::{set_text, Ctx, HallClassDescriptor, HallReport, Regime, Stmt, Verdict};
use crate::groups::Sporadic;

/// Proper Hall subgroups of sporadic groups with 2 ∈ π, keyed by π∩π(S).
/// With 2, 3 ∈ π the list is complete; each row is a single class.
const ROWS: &[(Sporadic, &[u64], &str)] = &[
    (Sporadic::M11, &[2, 3], "3^2:Q8.2"),
    (Sporadic::M11, &[2, 3, 5], "Alt6.2"),
    (Sporadic::M22, &[2, 3, 5], "2^4:Alt6"),
    (Sporadic::M23, &[2, 3], "2^4:(3×Alt4):2"),
    (Sporadic::M23, &[2, 3, 5], "2^4:Alt6"),
    (Sporadic::M23, &[2, 3, 5], "2^4:(3×Alt5):2"),
    (Sporadic::M23, &[2, 3, 5, 7], "L3(4):2"),
    (Sporadic::M23, &[2, 3, 5, 7], "2^4:Alt7"),
    (Sporadic::M23, &[2, 3, 5, 7, 11], "M22"),
    (Sporadic::M24, &[2, 3, 5], "2^6:3.Sym6"),
    (Sporadic::J1, &[2, 3], "2×Alt4"),
    (Sporadic::J1, &[2, 7], "2^3:7"),
    (Sporadic::J1, &[2, 3, 5], "2×Alt5"),
    (Sporadic::J1, &[2, 3, 7], "2^3:7:3"),
    (Sporadic::J4, &[2, 3, 5], "2^11:(2^6:3.Sym6)"),
];

/// `sporadic.M23.2-3-5`, with a letter suffix when one π has several rows.
fn case_id(row: usize) -> String {
    let (s, primes, _) = ROWS[row];
    let p: Vec<String> = primes.iter().map(u64::to_string).collect();
    let base = format!("sporadic.{}.{}", s.name().replace('\'', ""), p.join("-"));
    let same: Vec<usize> = (0..ROWS.len()).filter(|&i| ROWS[i].0 == s && ROWS[i].1 == primes).collect();
    if same.len() == 1 {
        return base;
    }
    let pos = same.iter().position(|&i| i == row).expect("row in its own group");
    format!("{base}.{}", (b'a' + pos as u8) as char)
}

fn matches(ctx: &Ctx, s: Sporadic) -> Vec<HallClassDescriptor> {
    ROWS.iter()
        .enumerate()
        .filter(|(_, (g, primes, _))| *g == s && ctx.inter.is(primes))
        .filter_map(|(row, (_, primes, structure))| {
            Stmt::new()
                .req(
                    format!("π∩π(S) = {}", set_text(&crate::arith::PrimeSet::of(primes))),
                    set_text(&ctx.inter),
                    true,
                )
                .emit(&case_id(row), *structure, 1, "one class")
        })
        .collect()
}

/// Table lookup. `None` when the regime is one the table does not settle.
pub(crate) fn report(ctx: &Ctx) -> Option<HallReport> {
    let s = ctx.spec.sporadic?;
    let classes = matches(ctx, s);
    match ctx.regime() {
        Regime::Cross => {}
        Regime::TwoNotThree if !classes.is_empty() => {}
        _ => return None,
    }
    let mut r = ctx.exact(classes, Vec::new());
    if r.k_exact() == Some(1) {
        r.d_pi = Verdict::OutOfScope("D_π for sporadic groups is not decided by the table".into());
    }
    Some(r)
}
