use super::FibredCategory;
use crate::category::{check_category, check_functor, FinFunctor, Mor};
use crate::report::ValidationReport;

/// Whether `m` is cartesian for `p`: every `g` into the target of `m` whose
/// image factors as `p(m) ∘ w` factors uniquely as `m ∘ h` with `p(h) = w`.
/// Decided by full enumeration; the domain of `p` must be a valid category.
pub fn is_cartesian_wrt(p: &FinFunctor, m: Mor) -> bool {
    let (e, b) = (&*p.dom, &*p.cod);
    let (s, t) = (e.src(m), e.tgt(m));
    let pm = p.mor[m];
    for z in 0..e.object_count() {
        for &g in e.hom(z, t) {
            for &w in b.hom(p.obj[z], p.obj[s]) {
                if b.compose(pm, w) != Some(p.mor[g]) {
                    continue;
                }
                let lifts = e
                    .hom(z, s)
                    .iter()
                    .filter(|&&h| p.mor[h] == w && e.compose(m, h) == Some(g))
                    .count();
                if lifts != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// The dual property: every `g` out of the source of `m` whose image
/// factors as `w ∘ p(m)` factors uniquely as `h ∘ m` with `p(h) = w`.
pub fn is_opcartesian_wrt(p: &FinFunctor, m: Mor) -> bool {
    let (e, b) = (&*p.dom, &*p.cod);
    let (s, t) = (e.src(m), e.tgt(m));
    let pm = p.mor[m];
    for z in 0..e.object_count() {
        for &g in e.hom(s, z) {
            for &w in b.hom(p.obj[t], p.obj[z]) {
                if b.compose(w, pm) != Some(p.mor[g]) {
                    continue;
                }
                let lifts = e
                    .hom(t, z)
                    .iter()
                    .filter(|&&h| p.mor[h] == w && e.compose(h, m) == Some(g))
                    .count();
                if lifts != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Cartesianness in the orientation of the completion: right variants are
/// fibrations, left variants opfibrations, so for left variants this decides
/// the dual property.
pub fn is_cartesian(fc: &FibredCategory, m: Mor) -> bool {
    if fc.variant.is_left() {
        is_opcartesian_wrt(&fc.projection, m)
    } else {
        is_cartesian_wrt(&fc.projection, m)
    }
}

/// Checks that `fc` is a split (op)fibration with its cleavage.
///
/// Law names: `total: …` and `projection: …` (forwarded), `fiber-partition`,
/// `lift-exists`, `cleavage-projection`, `cleavage-endpoint`,
/// `cleavage-cartesian`, `split-identity`, `split-composite`.
pub fn check_split_fibration(fc: &FibredCategory) -> ValidationReport {
    let (e, b) = (&*fc.total, &*fc.base);
    let mut report = ValidationReport::new();
    report.absorb("total: ", check_category(e));
    report.absorb("projection: ", check_functor(&fc.projection));
    if !report.ok {
        return report;
    }
    let p = &fc.projection;

    let mut owner = vec![None; e.object_count()];
    for (x, over) in fc.fibers.iter().enumerate() {
        for &o in over {
            if owner[o].replace(x).is_some() || p.obj[o] != x {
                report.push("fiber-partition", [e.ob_name(o)]);
            }
        }
    }
    for (o, x) in owner.iter().enumerate() {
        if x.is_none() {
            report.push("fiber-partition", [e.ob_name(o)]);
        }
    }
    if !report.ok || fc.cleavage.len() != b.morphism_count() {
        if fc.cleavage.len() != b.morphism_count() {
            report.push("lift-exists", ["cleavage"]);
        }
        return report;
    }

    let left = fc.variant.is_left();
    let mut lift_ok = vec![true; b.morphism_count()];
    #[allow(clippy::needless_range_loop)]
    for f in 0..b.morphism_count() {
        let anchor = fc.lift_anchor(f);
        let row = &fc.cleavage[f];
        if row.len() != fc.fibers[anchor].len() {
            report.push("lift-exists", [b.mor_name(f)]);
            lift_ok[f] = false;
            continue;
        }
        for (i, &l) in row.iter().enumerate() {
            let at = fc.fibers[anchor][i];
            let witness = [b.mor_name(f), e.ob_name(at), e.mor_name(l)];
            if p.mor[l] != f {
                report.push("cleavage-projection", witness);
                lift_ok[f] = false;
            } else if (left && e.src(l) != at) || (!left && e.tgt(l) != at) {
                report.push("cleavage-endpoint", witness);
                lift_ok[f] = false;
            } else if !is_cartesian(fc, l) {
                report.push("cleavage-cartesian", witness);
            }
        }
    }
    for x in 0..b.object_count() {
        let id = b.id(x);
        if !lift_ok[id] {
            continue;
        }
        for (i, &l) in fc.cleavage[id].iter().enumerate() {
            let o = fc.fibers[x][i];
            if l != e.id(o) {
                report.push("split-identity", [b.mor_name(id), e.ob_name(o)]);
            }
        }
    }
    for (g, f, gf) in b.compose_entries() {
        if !b.composable(g, f) || !lift_ok[g] || !lift_ok[f] || !lift_ok[gf] {
            continue;
        }
        let pos = |x: usize, o: usize| fc.fibers[x].iter().position(|&q| q == o);
        if left {
            for (i, &l1) in fc.cleavage[f].iter().enumerate() {
                let Some(j) = pos(b.tgt(f), e.tgt(l1)) else { continue };
                let l2 = fc.cleavage[g][j];
                if e.compose(l2, l1) != Some(fc.cleavage[gf][i]) {
                    report.push(
                        "split-composite",
                        [b.mor_name(g), b.mor_name(f), e.ob_name(fc.fibers[b.src(f)][i])],
                    );
                }
            }
        } else {
            for (k, &l2) in fc.cleavage[g].iter().enumerate() {
                let Some(j) = pos(b.src(g), e.src(l2)) else { continue };
                let l1 = fc.cleavage[f][j];
                if e.compose(l2, l1) != Some(fc.cleavage[gf][k]) {
                    report.push(
                        "split-composite",
                        [b.mor_name(g), b.mor_name(f), e.ob_name(fc.fibers[b.tgt(g)][k])],
                    );
                }
            }
        }
    }
    report
}
