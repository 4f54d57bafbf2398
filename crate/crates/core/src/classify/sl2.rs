use super::{
    big, check_field, inter_is, part_is, pp, q2m1, qm, require_cross, subset_cond, ClassifyError, HallClassDescriptor,
    HallReport, Stmt,
};
use crate::arith::{epsilon, PrimeSet, Sign};
use crate::groups::{order, GroupSpec};

const PGL_SWAP: &str = "two classes, interchanged by PGL(2,q)";

/// Primes of |SL2(q)| that lie in π.
pub(crate) fn sl2_inter(q: u64, pi: &PrimeSet) -> PrimeSet {
    pi.intersection(&order(&GroupSpec::sl(2, q, Sign::Plus)).order.primes())
}

/// Hall classes of SL2(q) (or of PSL2(q) when `projective`) for 2, 3 ∈ π,
/// q odd and coprime to π.
pub(crate) fn sl2_descriptors(q: u64, pi: &PrimeSet, projective: bool) -> Vec<HallClassDescriptor> {
    let inter = sl2_inter(q, pi);
    let eps = epsilon(q).expect("odd q");
    let q_eps = qm(q, eps);
    let pick = |psl: &str, sl: &str| if projective { psl.to_string() } else { sl.to_string() };
    let sq = q2m1(q);
    let mut out = Vec::new();
    out.extend(
        subset_cond(Stmt::new(), &inter, "q−ε", &q_eps).emit(
            "sl2.dihedral",
            pick(&format!("Hall(D({q_eps}))"), &format!("Hall(2.D({q_eps}))")),
            1,
            "one class, inside the dihedral normaliser of a torus",
        ),
    );
    out.extend(
        part_is(inter_is(Stmt::new(), &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 24).emit(
            "sl2.tetrahedral",
            pick("Alt4", "SL2(3)"),
            1,
            "one class",
        ),
    );
    out.extend(
        part_is(inter_is(Stmt::new(), &inter, &[2, 3]), "q²−1", &sq, &[2, 3], 48).emit(
            "sl2.octahedral",
            pick("Sym4", "2.Sym4"),
            2,
            PGL_SWAP,
        ),
    );
    out.extend(
        part_is(inter_is(Stmt::new(), &inter, &[2, 3, 5]), "q²−1", &sq, &[2, 3, 5], 120).emit(
            "sl2.icosahedral",
            pick("Alt5", "SL2(5)"),
            2,
            PGL_SWAP,
        ),
    );
    out
}

/// k_π(SL2(q)).
pub(crate) fn k_sl2(q: u64, pi: &PrimeSet) -> u64 {
    sl2_descriptors(q, pi, false).iter().map(|d| d.class_count).sum()
}

/// Hall classes of GL2^η(q) for 2, 3 ∈ π, q odd and coprime to π.
pub(crate) fn gl2_descriptors(q: u64, eta: Sign, pi: &PrimeSet) -> Vec<HallClassDescriptor> {
    let inter = pi.intersection(&order(&GroupSpec::gl2(q, eta)).order.primes());
    let eps = epsilon(q).expect("odd q");
    let q_eps = qm(q, eps);
    let q_eta = qm(q, eta);
    let mut out = Vec::new();
    out.extend(subset_cond(Stmt::new(), &inter, "q−ε", &q_eps).emit(
        "gl2.dihedral",
        format!("Hall(Z({q_eta}).D({}))", big(2) * &q_eps),
        1,
        "one class",
    ));
    let m = pp(&q_eta, &[2, 3]);
    out.extend(
        part_is(inter_is(Stmt::new(), &inter, &[2, 3]), "q²−1", &q2m1(q), &[2, 3], 24).emit(
            "gl2.octahedral",
            format!("Z({m}).Sym4"),
            1,
            "one class",
        ),
    );
    out
}

/// k_π(GL2^η(q)).
pub(crate) fn k_gl2(q: u64, eta: Sign, pi: &PrimeSet) -> u64 {
    gl2_descriptors(q, eta, pi).iter().map(|d| d.class_count).sum()
}

/// Report on PSL2(q).
pub fn classify_sl2(q: u64, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    check_field(q)?;
    super::classify(&GroupSpec::psl(2, q, Sign::Plus), pi)
}

/// Report on GL2^η(q); only the cross-characteristic case with 2, 3 ∈ π.
pub fn classify_gl2(q: u64, eta: Sign, pi: &PrimeSet) -> Result<HallReport, ClassifyError> {
    check_field(q)?;
    require_cross(q, pi)?;
    super::classify(&GroupSpec::gl2(q, eta), pi)
}
