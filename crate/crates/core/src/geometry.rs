//! Finite Klein geometries `G/H` and groupoid geometries `𝒢/ℬ`, with the
//! completions they induce.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{GroupAction, PermGroup};
use crate::category::{connected_components, inverse_of, is_groupoid, subcategory, FinCat, Mor, Ob, SetValuedAction};
use crate::error::{Error, Result};
use crate::grothendieck::{grothendieck_complete, transformation_groupoid, Action, IsoReport, Variant};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleinPair {
    pub group: Arc<PermGroup>,
    /// A group on the same points whose elements all lie in `group`.
    pub subgroup: Arc<PermGroup>,
}

/// How the space is acted on: by a group, or by a groupoid through a
/// set-valued action on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceAction {
    Group(GroupAction),
    Groupoid(SetValuedAction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpace {
    pub points: Vec<String>,
    pub action: SpaceAction,
    /// Indices into `points`.
    pub basepoints: Vec<usize>,
}

/// Left cosets `gH`, each labeled by its first element in the group's
/// element order; the basepoint is `eH`.
pub fn klein_space(k: &KleinPair) -> Result<CosetSpace> {
    let g = &k.group;
    let h = g.embed(&k.subgroup)?;
    // The subgroup is closed by construction, but it must also be closed
    // inside `group`, which `subgroup` re-checks on indices.
    g.subgroup(&h)?;
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut points = Vec::new();
    for a in 0..g.order() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        for &x in &h {
            coset_of[g.mul(a, x)] = points.len();
        }
        points.push(format!("{}H", g.name(a)));
    }
    let n = points.len();
    let mut table = vec![0; g.order() * n];
    for a in 0..g.order() {
        for b in 0..g.order() {
            table[a * n + coset_of[b]] = coset_of[g.mul(a, b)];
        }
    }
    Ok(CosetSpace {
        basepoints: vec![coset_of[g.identity()]],
        action: SpaceAction::Group(GroupAction {
            group: g.clone(),
            carrier: points.clone(),
            table,
        }),
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KleinReport {
    pub cosets: usize,
    pub transitive: bool,
    pub components_of_x_mod_g: usize,
    pub vertex_group_order_at_basepoint: usize,
    /// The loops `(g, eH)` of `X//G` are exactly the `g ∈ H`.
    pub vertex_group_is_h: bool,
    pub h_order: usize,
    /// `(objects, morphisms)` of `X//G`.
    pub x_mod_g: (usize, usize),
    /// `(objects, morphisms)` of the completion of `H` acting on `X`.
    pub completion: (usize, usize),
    pub completion_components: usize,
    pub isomorphic: bool,
    pub obstruction: Option<String>,
}

/// Builds `X//G` and the concrete-left completion of `H` acting on `X = G/H`
/// by left multiplication, and reports how they compare.
pub fn check_klein(k: &KleinPair) -> Result<KleinReport> {
    let space = klein_space(k)?;
    let SpaceAction::Group(action) = &space.action else {
        unreachable!("klein_space yields a group action")
    };
    let g = &k.group;
    let n = space.points.len();
    let xg = Arc::new(transformation_groupoid(action));
    let components = connected_components(&xg).len();
    let base = space.basepoints[0];
    let loops: Vec<usize> = xg.hom(base, base).iter().map(|&m| m / n).collect();
    let h_idx = g.embed(&k.subgroup)?;
    let mut sorted_h = h_idx.clone();
    sorted_h.sort_unstable();

    let h = Arc::new(g.subgroup(&h_idx)?);
    let restricted = GroupAction {
        carrier: space.points.clone(),
        table: h
            .elements()
            .iter()
            .flat_map(|p| {
                let a = g.index_of(p).expect("embedded above");
                (0..n).map(move |x| action.act(a, x))
            })
            .collect(),
        group: h.clone(),
    };
    let fc = grothendieck_complete(&Action::Set(restricted.to_set_valued()), Variant::ConcreteLeft)?;
    let probe = IsoReport::probe(&fc.total, &xg, &[])?;
    Ok(KleinReport {
        cosets: n,
        transitive: components == 1,
        components_of_x_mod_g: components,
        vertex_group_order_at_basepoint: loops.len(),
        vertex_group_is_h: loops == sorted_h,
        h_order: h.order(),
        x_mod_g: (xg.object_count(), xg.morphism_count()),
        completion: (fc.total.object_count(), fc.total.morphism_count()),
        completion_components: connected_components(&fc.total).len(),
        isomorphic: probe.isomorphic,
        obstruction: probe.obstruction,
    })
}

/// A groupoid with a wide subgroupoid, given by its morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidGeometry {
    pub groupoid: Arc<FinCat>,
    pub sub: Vec<Mor>,
}

impl GroupoidGeometry {
    /// Checks that `groupoid` is one and that `sub` contains every identity
    /// and is closed under composition and inverses.
    pub fn new(groupoid: Arc<FinCat>, mut sub: Vec<Mor>) -> Result<GroupoidGeometry> {
        let g = &*groupoid;
        if !is_groupoid(g) {
            let f = (0..g.morphism_count())
                .find(|&f| inverse_of(g, f).is_none())
                .expect("a non-groupoid has a non-invertible morphism");
            return Err(Error::NotAGroupoid(g.mor_name(f).to_string()));
        }
        sub.sort_unstable();
        sub.dedup();
        let mut keep = vec![false; g.morphism_count()];
        for &f in &sub {
            *keep.get_mut(f).ok_or_else(|| Error::NotWideSubgroupoid(format!("no morphism #{f}")))? = true;
        }
        let fail = |msg: String| Err(Error::NotWideSubgroupoid(msg));
        for x in 0..g.object_count() {
            if !keep[g.id(x)] {
                return fail(format!("identity `{}` missing", g.mor_name(g.id(x))));
            }
        }
        for &f in &sub {
            let inv = inverse_of(g, f).expect("groupoid");
            if !keep[inv] {
                return fail(format!("inverse of `{}` missing", g.mor_name(f)));
            }
            for &h in &sub {
                if let Some(hf) = g.compose(h, f) {
                    if !keep[hf] {
                        return fail(format!("`{}` ∘ `{}` missing", g.mor_name(h), g.mor_name(f)));
                    }
                }
            }
        }
        Ok(GroupoidGeometry { groupoid, sub })
    }

    /// The subgroupoid as a category, morphisms in index order.
    pub fn sub_category(&self) -> FinCat {
        let objects: Vec<Ob> = (0..self.groupoid.object_count()).collect();
        subcategory(&self.groupoid, &objects, &self.sub)
    }
}

/// Classes of `g ~ g∘b` (`b ∈ ℬ`), acted on by postcomposition. Each class
/// lies over the common target of its members and is labeled `[g]` by its
/// first member. Points are listed fiber by fiber; `basepoints[x]` is the
/// class of `id_x`.
pub fn groupoid_coset_space(gg: &GroupoidGeometry) -> Result<CosetSpace> {
    let gg = GroupoidGeometry::new(gg.groupoid.clone(), gg.sub.clone())?;
    let g = &*gg.groupoid;
    let mut class_of = vec![usize::MAX; g.morphism_count()];
    let mut labels = Vec::new();
    let mut anchor = Vec::new();
    for f in 0..g.morphism_count() {
        if class_of[f] != usize::MAX {
            continue;
        }
        for &b in &gg.sub {
            if let Some(fb) = g.compose(f, b) {
                class_of[fb] = labels.len();
            }
        }
        labels.push(format!("[{}]", g.mor_name(f)));
        anchor.push(g.tgt(f));
    }
    // Fiber order: classes over each object in label order.
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); g.object_count()];
    let mut pos = vec![0; labels.len()];
    for (c, &y) in anchor.iter().enumerate() {
        pos[c] = fibers[y].len();
        fibers[y].push(c);
    }
    let mut rep = vec![usize::MAX; labels.len()];
    for f in (0..g.morphism_count()).rev() {
        rep[class_of[f]] = f;
    }
    let act = (0..g.morphism_count())
        .map(|h| {
            fibers[g.src(h)]
                .iter()
                .map(|&c| pos[class_of[g.comp(h, rep[c])]])
                .collect()
        })
        .collect();
    let order: Vec<usize> = fibers.iter().flatten().copied().collect();
    // Identity classes sit over distinct objects, so there is one per object.
    let basepoints: Vec<usize> = (0..g.object_count())
        .map(|x| order.iter().position(|&c| c == class_of[g.id(x)]).expect("listed"))
        .collect();
    Ok(CosetSpace {
        points: order.iter().map(|&c| labels[c].clone()).collect(),
        action: SpaceAction::Groupoid(SetValuedAction {
            base: gg.groupoid.clone(),
            fibers: fibers
                .iter()
                .map(|over| over.iter().map(|&c| labels[c].clone()).collect())
                .collect(),
            act,
        }),
        basepoints,
    })
}

/// What a groupoid geometry looks like in terms of its pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometryRow {
    pub points: usize,
    /// Points per connected component of the groupoid.
    pub blocks: Vec<usize>,
    pub basepoints: usize,
    /// Order of the stabilizer of each identity class, by object.
    pub stabilizer_orders: Vec<usize>,
    /// `(objects, morphisms)` of the completion of `ℬ` acting on the space.
    pub completion: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometryReport {
    pub report: ValidationReport,
    pub row: GeometryRow,
}

/// Checks that the space splits along the components of the groupoid and
/// that each basepoint is stabilized by exactly the loops of `ℬ` at its
/// object.
///
/// Law names: `coproduct-decomposition` (witness: morphism, point),
/// `stabilizer` (witness: object).
pub fn check_groupoid_geometry(gg: &GroupoidGeometry) -> Result<GeometryReport> {
    let space = groupoid_coset_space(gg)?;
    let SpaceAction::Groupoid(action) = &space.action else {
        unreachable!("groupoid_coset_space yields a groupoid action")
    };
    let g = &*gg.groupoid;
    let mut report = ValidationReport::new();
    let components = connected_components(g);
    let mut comp_of = vec![0; g.object_count()];
    for (i, objs) in components.iter().enumerate() {
        for &x in objs {
            comp_of[x] = i;
        }
    }
    for h in 0..g.morphism_count() {
        if comp_of[g.src(h)] != comp_of[g.tgt(h)] {
            report.push("coproduct-decomposition", [g.mor_name(h), ""]);
        }
    }
    let blocks = components
        .iter()
        .map(|objs| objs.iter().map(|&x| action.fibers[x].len()).sum())
        .collect();

    let in_sub = |f: Mor| gg.sub.binary_search(&f).is_ok();
    let mut stabilizer_orders = Vec::with_capacity(g.object_count());
    for x in 0..g.object_count() {
        let offset: usize = action.fibers[..x].iter().map(Vec::len).sum();
        let id_class = space.basepoints[x] - offset;
        let fixing: Vec<Mor> = g
            .hom(x, x)
            .iter()
            .copied()
            .filter(|&h| action.act[h][id_class] == id_class)
            .collect();
        if fixing.iter().any(|&h| !in_sub(h)) || g.hom(x, x).iter().any(|&h| in_sub(h) && !fixing.contains(&h)) {
            report.push("stabilizer", [g.ob_name(x)]);
        }
        stabilizer_orders.push(fixing.len());
    }

    let b = Arc::new(gg.sub_category());
    let restricted = SetValuedAction {
        base: b,
        fibers: action.fibers.clone(),
        act: gg.sub.iter().map(|&f| action.act[f].clone()).collect(),
    };
    let fc = grothendieck_complete(&Action::Set(restricted), Variant::ConcreteLeft)?;
    Ok(GeometryReport {
        report,
        row: GeometryRow {
            points: space.points.len(),
            blocks,
            basepoints: space.basepoints.len(),
            stabilizer_orders,
            completion: (fc.total.object_count(), fc.total.morphism_count()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{close_generators, standard_group, GroupKind, Perm};
    use crate::category::coproduct;

    fn s3() -> Arc<PermGroup> {
        Arc::new(standard_group(GroupKind::Symmetric, 3))
    }

    fn generated(degree: usize, gens: &[(&str, &[usize])]) -> Arc<PermGroup> {
        let gens = gens
            .iter()
            .map(|(n, line)| (n.to_string(), Perm::from_one_line(line).unwrap()))
            .collect();
        Arc::new(close_generators(degree, gens, 100).unwrap())
    }

    #[test]
    fn s3_mod_transposition() {
        let k = KleinPair {
            group: s3(),
            subgroup: generated(3, &[("s", &[2, 1, 3])]),
        };
        let space = klein_space(&k).unwrap();
        assert_eq!(space.points.len(), 3);
        assert_eq!(space.points[space.basepoints[0]], "eH");
        let r = check_klein(&k).unwrap();
        assert!(r.transitive);
        assert_eq!((r.vertex_group_order_at_basepoint, r.h_order), (2, 2));
        assert!(r.vertex_group_is_h);
        assert_eq!(r.x_mod_g, (3, 18));
        assert_eq!(r.completion, (3, 6));
        assert_eq!(r.completion_components, 2);
        assert!(!r.isomorphic);
        assert!(r.obstruction.is_some());
    }

    #[test]
    fn klein_extremes() {
        let g = s3();
        let whole = check_klein(&KleinPair {
            group: g.clone(),
            subgroup: g.clone(),
        })
        .unwrap();
        assert_eq!(whole.cosets, 1);
        assert_eq!(whole.vertex_group_order_at_basepoint, 6);
        assert!(whole.isomorphic);

        let c3 = Arc::new(standard_group(GroupKind::Cyclic, 3));
        let trivial = generated(3, &[]);
        let r = check_klein(&KleinPair {
            group: c3,
            subgroup: trivial,
        })
        .unwrap();
        assert_eq!(r.cosets, 3);
        assert_eq!(r.x_mod_g, (3, 9));
        assert_eq!(r.completion, (3, 3));
        assert!(!r.isomorphic);
    }

    #[test]
    fn foreign_subgroup() {
        let k = KleinPair {
            group: Arc::new(standard_group(GroupKind::Cyclic, 3)),
            subgroup: generated(3, &[("s", &[2, 1, 3])]),
        };
        assert!(matches!(klein_space(&k), Err(Error::NotASubgroup(_))));
    }

    fn d3_geometry() -> GroupoidGeometry {
        let a = GroupAction::natural(Arc::new(standard_group(GroupKind::Dihedral, 3)));
        let xg = Arc::new(transformation_groupoid(&a));
        let loops = (0..3).flat_map(|x| xg.hom(x, x).to_vec()).collect();
        GroupoidGeometry::new(xg, loops).unwrap()
    }

    #[test]
    fn d3_star_cosets() {
        let gg = d3_geometry();
        let space = groupoid_coset_space(&gg).unwrap();
        assert_eq!((space.points.len(), space.basepoints.len()), (9, 3));
        let r = check_groupoid_geometry(&gg).unwrap();
        assert!(r.report.ok, "{}", r.report);
        assert_eq!(r.row.stabilizer_orders, [2, 2, 2]);
        assert_eq!(r.row.blocks, [9]);
    }

    #[test]
    fn quotient_extremes() {
        let gg = d3_geometry();
        let ids = GroupoidGeometry::new(gg.groupoid.clone(), gg.groupoid.identities().to_vec()).unwrap();
        let space = groupoid_coset_space(&ids).unwrap();
        assert_eq!(space.points.len(), 18);
        let r = check_groupoid_geometry(&ids).unwrap();
        assert_eq!(r.row.stabilizer_orders, [1, 1, 1]);
        assert!(r.report.ok);

        let all = GroupoidGeometry::new(gg.groupoid.clone(), (0..18).collect()).unwrap();
        // g ~ g∘b with b ranging over everything leaves one class per target.
        assert_eq!(groupoid_coset_space(&all).unwrap().points.len(), 3);
    }

    #[test]
    fn disconnected_blocks() {
        let a = GroupAction::natural(Arc::new(standard_group(GroupKind::Cyclic, 3)));
        let xg = transformation_groupoid(&a);
        let two = Arc::new(coproduct(&xg, &xg));
        let gg = GroupoidGeometry::new(two.clone(), two.identities().to_vec()).unwrap();
        let r = check_groupoid_geometry(&gg).unwrap();
        assert_eq!(r.row.blocks, [9, 9]);
        assert!(r.report.ok);
    }

    #[test]
    fn not_wide() {
        let gg = d3_geometry();
        let r = GroupoidGeometry::new(gg.groupoid.clone(), vec![gg.groupoid.id(0)]);
        assert!(matches!(r, Err(Error::NotWideSubgroupoid(_))));
        let r = GroupoidGeometry::new(gg.groupoid.clone(), {
            let mut v = gg.groupoid.identities().to_vec();
            v.push(gg.groupoid.hom(0, 1)[0]);
            v
        });
        assert!(matches!(r, Err(Error::NotWideSubgroupoid(_))));
    }
}
