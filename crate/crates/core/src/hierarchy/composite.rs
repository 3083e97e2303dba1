use crate::category::{subcategory, FinCat, FinFunctor, Mor, Ob};
use crate::grothendieck::is_cartesian_wrt;
use crate::report::ValidationReport;

/// The fiber of `p` over the object `x`: objects sent to `x` and morphisms
/// sent to its identity, with their indices in the domain of `p`.
///
/// # Panics
///
/// Panics if `p` does not send identities over `x` to the identity of `x`;
/// a functor always does.
pub fn fiber_of(p: &FinFunctor, x: Ob) -> (FinCat, Vec<Ob>, Vec<Mor>) {
    let (objects, morphisms) = fiber_parts(p, x);
    (subcategory(&p.dom, &objects, &morphisms), objects, morphisms)
}

fn fiber_parts(p: &FinFunctor, x: Ob) -> (Vec<Ob>, Vec<Mor>) {
    let e = &*p.dom;
    let id = p.cod.id(x);
    let objects = (0..e.object_count()).filter(|&o| p.obj[o] == x).collect();
    let morphisms = (0..e.morphism_count())
        .filter(|&m| p.mor[m] == id && p.obj[e.src(m)] == x && p.obj[e.tgt(m)] == x)
        .collect();
    (objects, morphisms)
}

/// Whether every morphism of the codomain has a cartesian lift at every
/// object over its target. Returns the first missing `(u, e)`.
fn missing_lift(p: &FinFunctor, cartesian: &[bool]) -> Option<(Mor, Ob)> {
    let (e, b) = (&*p.dom, &*p.cod);
    for u in 0..b.morphism_count() {
        for o in (0..e.object_count()).filter(|&o| p.obj[o] == b.tgt(u)) {
            let found = (0..e.object_count())
                .any(|s| e.hom(s, o).iter().any(|&m| p.mor[m] == u && cartesian[m]));
            if !found {
                return Some((u, o));
            }
        }
    }
    None
}

/// Checks that `Q∘P` is a fibration whose cartesian morphisms are exactly
/// the `P`-cartesian ones over `Q`-cartesian images, and that `P` restricts
/// to a fibration over every fiber of `Q∘P`. Cartesianness is decided by
/// enumeration for every morphism.
///
/// Law names: `composable`, `composite-lift` (witness: base morphism and
/// total object), `cartesian-composite` (witness: total morphism),
/// `restriction-lift` (witness: outer object, morphism, total object).
pub fn check_composite_fibration(p: &FinFunctor, q: &FinFunctor) -> ValidationReport {
    let mut report = ValidationReport::new();
    if *p.cod != *q.dom {
        report.push("composable", ["cod P", "dom Q"]);
        return report;
    }
    let qp = q.after(p);
    let (e, b2, b1) = (&*p.dom, &*q.dom, &*q.cod);
    let cart_qp: Vec<bool> = (0..e.morphism_count()).map(|m| is_cartesian_wrt(&qp, m)).collect();
    let cart_p: Vec<bool> = (0..e.morphism_count()).map(|m| is_cartesian_wrt(p, m)).collect();
    let cart_q: Vec<bool> = (0..b2.morphism_count()).map(|n| is_cartesian_wrt(q, n)).collect();

    for u in 0..b1.morphism_count() {
        for o in (0..e.object_count()).filter(|&o| qp.obj[o] == b1.tgt(u)) {
            let found = (0..e.object_count())
                .any(|s| e.hom(s, o).iter().any(|&m| qp.mor[m] == u && cart_qp[m]));
            if !found {
                report.push("composite-lift", [b1.mor_name(u), e.ob_name(o)]);
            }
        }
    }

    for m in 0..e.morphism_count() {
        if cart_qp[m] != (cart_p[m] && cart_q[p.mor[m]]) {
            report.push("cartesian-composite", [e.mor_name(m)]);
        }
    }

    for i in 0..b1.object_count() {
        let (e_obs, e_mors) = fiber_parts(&qp, i);
        if let Some(&o) = e_obs.iter().find(|&&o| !e_mors.contains(&e.id(o))) {
            // A misprojected identity leaves the fiber without a unit.
            report.push("restriction-lift", [b1.ob_name(i), e.mor_name(e.id(o)), e.ob_name(o)]);
            continue;
        }
        let e_i = subcategory(e, &e_obs, &e_mors);
        let (b_i, b_obs, b_mors) = fiber_of(q, i);
        let mut ob_pos = vec![usize::MAX; b2.object_count()];
        for (k, &x) in b_obs.iter().enumerate() {
            ob_pos[x] = k;
        }
        let mut mor_pos = vec![usize::MAX; b2.morphism_count()];
        for (k, &n) in b_mors.iter().enumerate() {
            mor_pos[n] = k;
        }
        let p_i = FinFunctor::new(
            e_i.into(),
            b_i.into(),
            e_obs.iter().map(|&o| ob_pos[p.obj[o]]).collect(),
            e_mors.iter().map(|&m| mor_pos[p.mor[m]]).collect(),
        );
        let cart: Vec<bool> = (0..e_mors.len()).map(|m| is_cartesian_wrt(&p_i, m)).collect();
        if let Some((u, o)) = missing_lift(&p_i, &cart) {
            report.push(
                "restriction-lift",
                [b1.ob_name(i), p_i.cod.mor_name(u), p_i.dom.ob_name(o)],
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::build_hierarchy;
    use crate::catalog::{group_hierarchy as swapped_squares, groupoid_hierarchy as codiscrete_blocks};

    #[test]
    fn both_hierarchies_pass() {
        for spec in [codiscrete_blocks(), swapped_squares()] {
            let h = build_hierarchy(&spec).unwrap();
            let report = check_composite_fibration(&h.p, h.q());
            assert!(report.ok, "{report}");
        }
    }

    #[test]
    fn misprojection_breaks_cartesian_clause() {
        let h = build_hierarchy(&codiscrete_blocks()).unwrap();
        let m = h.total().mor("(id_A,(a1>a2,x2))").unwrap();
        let mut p = h.p.clone();
        p.mor[m] = p.cod.mor("(id_A,a1>a3)").unwrap();
        let report = check_composite_fibration(&p, h.q());
        let hits: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.law == "cartesian-composite")
            .collect();
        // Cartesianness of the neighbouring vertical morphisms is now decided
        // against a P that is no longer a functor.
        assert!(!hits.is_empty(), "{report}");
        assert!(hits.iter().any(|v| v.witness == ["(id_A,(a2>a1,x1))"]));
        for v in hits {
            assert!(h.total().mor(&v.witness[0]).is_some());
        }
    }

    #[test]
    fn mismatched_projections_are_refused() {
        let h = build_hierarchy(&codiscrete_blocks()).unwrap();
        let report = check_composite_fibration(&h.p, &h.outer.projection);
        assert!(report.has_law("composable"));
    }
}
