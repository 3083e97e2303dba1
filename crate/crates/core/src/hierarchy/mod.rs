//! Two-level hierarchies: inner completions indexed by the objects of an
//! outer base, glued by an outer action on the inner totals.
//!
//! Deeper hierarchies are built by feeding a total back in as an inner base.

mod composite;
mod models;

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{coproduct_tagged, CatValuedAction, FinCat, FinFunctor, Mor, Ob, SetValuedAction};
use crate::error::{Error, Result};
use crate::grothendieck::{grothendieck_complete, Action, FibredCategory, Variant};

pub use composite::{check_composite_fibration, fiber_of};
pub use models::{
    classify_base, compare_models, presentation_stats, BaseClass, BaseKind, CodomainKind,
    ComparisonReport, PresentationStats,
};

/// `inner[I]` is completed concrete-left over its own base; `outer_act[f]`
/// for `f: I → J` is a functor from the completion at `I` to the one at `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchySpec {
    pub outer_base: Arc<FinCat>,
    pub inner: Vec<SetValuedAction>,
    pub outer_act: Vec<FinFunctor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hierarchy {
    /// Inner completions, one per outer object.
    pub inner: Vec<FibredCategory>,
    /// The inner completions side by side over the coproduct of the inner
    /// bases, each part tagged with its outer object.
    pub inner_coproduct: FibredCategory,
    /// The total over the outer base, whose fiber at `I` is `inner[I].total`.
    pub outer: FibredCategory,
    /// Inner bases completed along the outer action they inherit.
    pub base_fibration: FibredCategory,
    /// `P`: outer total to the total of `base_fibration`.
    pub p: FinFunctor,
}

impl Hierarchy {
    /// `Q`: the projection of `base_fibration`.
    pub fn q(&self) -> &FinFunctor {
        &self.base_fibration.projection
    }

    pub fn total(&self) -> &Arc<FinCat> {
        &self.outer.total
    }
}

fn tagged(level: &str, e: Error) -> Error {
    match e {
        Error::NonFunctorialAction { law, witness } => Error::NonFunctorialAction {
            law: format!("{level}: {law}"),
            witness,
        },
        other => other,
    }
}

/// The concrete-left completions of the inner actions, which the outer
/// action's functors must run between.
pub fn inner_completions(inner: &[SetValuedAction], outer_base: &FinCat) -> Result<Vec<FibredCategory>> {
    if inner.len() != outer_base.object_count() {
        return Err(Error::DomainMismatch(format!(
            "{} inner actions for {} outer objects",
            inner.len(),
            outer_base.object_count()
        )));
    }
    inner
        .iter()
        .enumerate()
        .map(|(i, a)| {
            grothendieck_complete(&Action::Set(a.clone()), Variant::ConcreteLeft)
                .map_err(|e| tagged(&format!("inner {}", outer_base.ob_name(i)), e))
        })
        .collect()
}

/// Moves a concrete-left completion along a base functor and an object map
/// of the totals: `(u, x → y)` goes to the morphism over `base(u)` out of
/// `objects[x]`, which must end at `objects[y]`.
pub fn transport(
    from: &FibredCategory,
    to: &FibredCategory,
    base: &FinFunctor,
    objects: &[Ob],
) -> Result<FinFunctor> {
    let (e, d) = (&*from.total, &*to.total);
    if objects.len() != e.object_count() {
        return Err(Error::DomainMismatch("object map must cover the source total".into()));
    }
    let mor = (0..e.morphism_count())
        .map(|m| {
            let u = base.mor[from.projection.mor[m]];
            let (x, y) = (objects[e.src(m)], objects[e.tgt(m)]);
            d.hom(x, y)
                .iter()
                .copied()
                .find(|&n| to.projection.mor[n] == u)
                .ok_or_else(|| {
                    Error::DomainMismatch(format!(
                        "no morphism over `{}` from `{}` to `{}`",
                        to.base.mor_name(u),
                        d.ob_name(x),
                        d.ob_name(y)
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FinFunctor::new(from.total.clone(), to.total.clone(), objects.to_vec(), mor))
}

/// Builds both levels and the factorization of the outer projection
/// through the completion of the inner bases.
///
/// Non-functorial actions are reported with a level tag: `inner <object>`,
/// `outer` for the action on inner totals, `outer base` for the action it
/// induces on inner bases.
pub fn build_hierarchy(spec: &HierarchySpec) -> Result<Hierarchy> {
    let b1 = &spec.outer_base;
    let inner = inner_completions(&spec.inner, b1)?;
    if spec.outer_act.len() != b1.morphism_count() {
        return Err(Error::DomainMismatch(format!(
            "{} outer functors for {} outer morphisms",
            spec.outer_act.len(),
            b1.morphism_count()
        )));
    }
    let outer_action = CatValuedAction {
        base: b1.clone(),
        fibers: inner.iter().map(|fc| fc.total.clone()).collect(),
        act: spec.outer_act.clone(),
    };
    outer_action.validate().map_err(|e| tagged("outer", e))?;

    let base_action = descend(b1, &inner, &spec.outer_act)?;
    base_action.validate().map_err(|e| tagged("outer base", e))?;

    let outer = grothendieck_complete(&Action::Cat(outer_action), Variant::AbstractLeft)?;
    let base_fibration = grothendieck_complete(&Action::Cat(base_action), Variant::AbstractLeft)?;
    let p = factor(&outer, &base_fibration, &inner);
    let inner_coproduct = coproduct_fibration(b1, &inner)?;
    Ok(Hierarchy {
        inner,
        inner_coproduct,
        outer,
        base_fibration,
        p,
    })
}

/// Reads off the action on inner bases: `F(f)` must send everything over a
/// base object (or morphism) to things over a single one.
fn descend(b1: &Arc<FinCat>, inner: &[FibredCategory], act: &[FinFunctor]) -> Result<CatValuedAction> {
    let mut functors = Vec::with_capacity(act.len());
    for (f, functor) in act.iter().enumerate() {
        let (from, to) = (&inner[b1.src(f)], &inner[b1.tgt(f)]);
        let (src_base, tgt_base) = (&from.base, &to.base);
        let conflict = |what: &str, name: &str| Error::NonFunctorialAction {
            law: "outer: base-descent".into(),
            witness: format!("({}, {what} {name})", b1.mor_name(f)),
        };
        let undetermined = |what: &str, name: &str| {
            Error::DomainMismatch(format!(
                "outer functor `{}` does not determine the image of inner {what} `{name}`",
                b1.mor_name(f)
            ))
        };
        let mut obj = vec![None; src_base.object_count()];
        for o in 0..from.total.object_count() {
            let x = from.projection.obj[o];
            let y = to.projection.obj[functor.obj[o]];
            if *obj[x].get_or_insert(y) != y {
                return Err(conflict("object", src_base.ob_name(x)));
            }
        }
        let mut mor = vec![None; src_base.morphism_count()];
        for m in 0..from.total.morphism_count() {
            let u = from.projection.mor[m];
            let v = to.projection.mor[functor.mor[m]];
            if *mor[u].get_or_insert(v) != v {
                return Err(conflict("morphism", src_base.mor_name(u)));
            }
        }
        let obj = obj
            .iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| undetermined("object", src_base.ob_name(x))))
            .collect::<Result<Vec<_>>>()?;
        let mor = mor
            .iter()
            .enumerate()
            .map(|(u, v)| v.ok_or_else(|| undetermined("morphism", src_base.mor_name(u))))
            .collect::<Result<Vec<_>>>()?;
        functors.push(FinFunctor::new(src_base.clone(), tgt_base.clone(), obj, mor));
    }
    Ok(CatValuedAction {
        base: b1.clone(),
        fibers: inner.iter().map(|fc| fc.base.clone()).collect(),
        act: functors,
    })
}

/// `P(I, x) = (I, p_I x)` and `P(f, φ) = (f, p_J φ)`.
fn factor(outer: &FibredCategory, bf: &FibredCategory, inner: &[FibredCategory]) -> FinFunctor {
    let e = &*outer.total;
    let b1 = &*outer.base;
    let mut obj = vec![0; e.object_count()];
    for (i, over) in outer.fibers.iter().enumerate() {
        for (a, &o) in over.iter().enumerate() {
            obj[o] = bf.fibers[i][inner[i].projection.obj[a]];
        }
    }
    let index: HashMap<(Mor, Ob, Mor), Mor> = (0..bf.total.morphism_count())
        .map(|n| ((bf.projection.mor[n], bf.total.src(n), bf.components[n]), n))
        .collect();
    let mor = (0..e.morphism_count())
        .map(|m| {
            let f = outer.projection.mor[m];
            let u = inner[b1.tgt(f)].projection.mor[outer.components[m]];
            index[&(f, obj[e.src(m)], u)]
        })
        .collect();
    FinFunctor::new(outer.total.clone(), bf.total.clone(), obj, mor)
}

fn coproduct_fibration(b1: &FinCat, inner: &[FibredCategory]) -> Result<FibredCategory> {
    let tags: Vec<&str> = b1.objects().iter().map(String::as_str).collect();
    let totals: Vec<(&str, &FinCat)> = tags.iter().copied().zip(inner.iter().map(|fc| &*fc.total)).collect();
    let bases: Vec<(&str, &FinCat)> = tags.iter().copied().zip(inner.iter().map(|fc| &*fc.base)).collect();
    let total = Arc::new(coproduct_tagged(&totals)?);
    let base = Arc::new(coproduct_tagged(&bases)?);
    let (mut obj, mut mor) = (Vec::new(), Vec::new());
    let (mut cleavage, mut fibers, mut components) = (Vec::new(), Vec::new(), Vec::new());
    let (mut ob_off, mut mor_off, mut base_ob_off, mut base_mor_off) = (0, 0, 0, 0);
    for fc in inner {
        obj.extend(fc.projection.obj.iter().map(|&x| x + base_ob_off));
        mor.extend(fc.projection.mor.iter().map(|&u| u + base_mor_off));
        cleavage.extend(fc.cleavage.iter().map(|row| row.iter().map(|&l| l + mor_off).collect()));
        fibers.extend(fc.fibers.iter().map(|over| over.iter().map(|&o| o + ob_off).collect()));
        components.extend(fc.components.iter().copied());
        ob_off += fc.total.object_count();
        mor_off += fc.total.morphism_count();
        base_ob_off += fc.base.object_count();
        base_mor_off += fc.base.morphism_count();
    }
    Ok(FibredCategory {
        projection: FinFunctor::new(total.clone(), base.clone(), obj, mor),
        total,
        base,
        cleavage,
        fibers,
        components,
        variant: Variant::ConcreteLeft,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{group_hierarchy as swapped_squares, groupoid_hierarchy as codiscrete_blocks};
    use crate::algebra::{group_as_category, standard_group, GroupKind};
    use crate::category::{
        check_category, check_functor, discrete_category, find_isomorphism,
    };
    use crate::grothendieck::check_split_fibration;

    #[test]
    fn codiscrete_blocks_total() {
        let h = build_hierarchy(&codiscrete_blocks()).unwrap();
        let e = h.total();
        assert_eq!((e.object_count(), e.morphism_count()), (6, 36));
        assert_eq!(e.ob_name(0), "(A,(a1,x1))");
        assert!(check_category(e).ok);
        assert!(e.mor("(A>B,(b1>b2,x5))").is_some());
        assert!(check_split_fibration(&h.outer).ok);
        assert!(check_functor(&h.p).ok);
        let qp = h.q().after(&h.p);
        assert_eq!(qp.obj, h.outer.projection.obj);
        assert_eq!(qp.mor, h.outer.projection.mor);
        assert_eq!(h.inner_coproduct.total.morphism_count(), 18);
        assert!(check_split_fibration(&h.inner_coproduct).ok);
        assert_eq!(h.base_fibration.total.morphism_count(), 36);
    }

    #[test]
    fn swapped_squares_total() {
        let h = build_hierarchy(&swapped_squares()).unwrap();
        let e = h.total();
        assert_eq!((e.object_count(), e.morphism_count()), (1, 18));
        assert!(check_category(e).ok);
        let qp = h.q().after(&h.p);
        assert_eq!(qp.mor, h.outer.projection.mor);
    }

    #[test]
    fn outer_fiber_is_inner_completion() {
        let spec = codiscrete_blocks();
        let h = build_hierarchy(&spec).unwrap();
        for i in 0..2 {
            let (fiber, _, _) = fiber_of(&h.outer.projection, i);
            let fiber = Arc::new(fiber);
            let inner = &h.inner[i].total;
            let iso = find_isomorphism(&fiber, inner, crate::Budget::iso_default()).unwrap();
            assert!(iso.is_some());
            let id = h.outer.base.mor_name(h.outer.base.id(i));
            for m in inner.morphisms() {
                assert!(fiber.mor(&format!("({id},{})", m.name)).is_some());
            }
        }
    }

    #[test]
    fn terminal_outer_base_is_one_level() {
        let outer_base = Arc::new(discrete_category(["T"]));
        let g = Arc::new(group_as_category(&standard_group(GroupKind::Cyclic, 3)));
        let inner = vec![crate::algebra::GroupAction::natural(Arc::new(standard_group(GroupKind::Cyclic, 3)))
            .to_set_valued()];
        assert_eq!(inner[0].base, g);
        let comp = inner_completions(&inner, &outer_base).unwrap();
        let spec = HierarchySpec {
            outer_base,
            outer_act: vec![FinFunctor::identity(comp[0].total.clone())],
            inner,
        };
        let h = build_hierarchy(&spec).unwrap();
        let iso = find_isomorphism(h.total(), &comp[0].total, crate::Budget::iso_default()).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn non_functorial_outer_action_is_tagged() {
        let mut spec = codiscrete_blocks();
        let comp = inner_completions(&spec.inner, &spec.outer_base).unwrap();
        // Let A>B move the first two points crosswise while B>A still moves
        // by position: their composite is no longer the identity.
        let sigma = [1, 0, 2];
        let base = FinFunctor::new(
            comp[0].base.clone(),
            comp[1].base.clone(),
            sigma.to_vec(),
            (0..9).map(|i| sigma[i / 3] * 3 + sigma[i % 3]).collect(),
        );
        let ab = spec.outer_base.mor("A>B").unwrap();
        spec.outer_act[ab] = transport(&comp[0], &comp[1], &base, &sigma).unwrap();
        match build_hierarchy(&spec) {
            Err(Error::NonFunctorialAction { law, .. }) => assert_eq!(law, "outer: composition"),
            other => panic!("expected a tagged violation, got {other:?}"),
        }
    }
}
