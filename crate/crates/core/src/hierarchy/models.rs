use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{build_hierarchy, inner_completions, transport, HierarchySpec};
use crate::algebra::{group_as_category, wreath_product, GroupAction, PermGroup};
use crate::category::{FinCat, FinFunctor, SetValuedAction};
use crate::error::{Error, Result};
use crate::grothendieck::{grothendieck_complete, transformation_groupoid, Action, IsoReport, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PresentationStats {
    pub objects: usize,
    pub morphisms: usize,
    /// Pairs `(g, f)` with `src g = tgt f`: the size of the composition table
    /// a presentation has to store.
    pub composable_pairs: usize,
}

pub fn presentation_stats(c: &FinCat) -> PresentationStats {
    let n = c.object_count();
    let (mut into, mut out) = (vec![0; n], vec![0; n]);
    for m in c.morphisms() {
        into[m.tgt] += 1;
        out[m.src] += 1;
    }
    PresentationStats {
        objects: n,
        morphisms: c.morphism_count(),
        composable_pairs: (0..n).map(|x| into[x] * out[x]).sum(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    /// Completion of the wreath product over a single fiber point.
    pub group_model: PresentationStats,
    /// Total of the hierarchy of transformation groupoids.
    pub groupoid_model: PresentationStats,
    pub morphisms_coincide: bool,
    /// Decided only when object and morphism counts both agree; `None` if
    /// the search ran out of budget.
    pub isomorphic: Option<bool>,
    pub notes: Vec<String>,
}

/// Builds the one-object model of `inner ≀ outer` and the groupoid
/// hierarchy whose inner levels are `block // inner` and whose outer level
/// is `blocks // outer`, moving blocks onto each other by position.
pub fn compare_models(
    blocks: &[Vec<String>],
    inner: &Arc<PermGroup>,
    outer: &Arc<PermGroup>,
) -> Result<ComparisonReport> {
    let size = blocks.first().map_or(0, Vec::len);
    if let Some(b) = blocks.iter().find(|b| b.len() != size) {
        return Err(Error::BlockSizeMismatch(format!(
            "blocks of sizes {size} and {}",
            b.len()
        )));
    }
    if inner.degree() != size {
        return Err(Error::BlockSizeMismatch(format!(
            "inner group acts on {} points, blocks have {size}",
            inner.degree()
        )));
    }
    if outer.degree() != blocks.len() {
        return Err(Error::BlockSizeMismatch(format!(
            "outer group acts on {} points, there are {} blocks",
            outer.degree(),
            blocks.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for p in blocks.iter().flatten() {
        if !seen.insert(p) {
            return Err(Error::DuplicateName {
                kind: "point",
                name: p.clone(),
            });
        }
    }

    let wreath = wreath_product(inner, outer)?;
    let w = Arc::new(group_as_category(&wreath.group));
    let single = SetValuedAction {
        fibers: vec![vec!["X".to_string()]],
        act: vec![vec![0]; w.morphism_count()],
        base: w,
    };
    let group_total = grothendieck_complete(&Action::Set(single), Variant::ConcreteLeft)?.total;

    let outer_action = GroupAction::natural(outer.clone());
    let outer_base = Arc::new(transformation_groupoid(&outer_action));
    let inner_actions: Vec<SetValuedAction> = blocks
        .iter()
        .map(|block| {
            let mut a = GroupAction::natural(inner.clone());
            a.carrier = block.clone();
            let base = Arc::new(transformation_groupoid(&a));
            SetValuedAction {
                fibers: block.iter().map(|p| vec![p.clone()]).collect(),
                act: vec![vec![0]; base.morphism_count()],
                base,
            }
        })
        .collect();
    let comp = inner_completions(&inner_actions, &outer_base)?;
    let outer_act = outer_base
        .morphisms()
        .iter()
        .map(|m| {
            let (from, to) = (&comp[m.src], &comp[m.tgt]);
            let base = FinFunctor::new(
                from.base.clone(),
                to.base.clone(),
                (0..from.base.object_count()).collect(),
                (0..from.base.morphism_count()).collect(),
            );
            transport(from, to, &base, &(0..size).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let h = build_hierarchy(&HierarchySpec {
        outer_base,
        inner: inner_actions,
        outer_act,
    })?;

    let group_model = presentation_stats(&group_total);
    let groupoid_model = presentation_stats(h.total());
    let morphisms_coincide = group_model.morphisms == groupoid_model.morphisms;
    let mut notes = vec![format!(
        "wreath product of order {} on {} points",
        wreath.group.order(),
        wreath.group.degree()
    )];
    let isomorphic = if group_model.objects == groupoid_model.objects && morphisms_coincide {
        match IsoReport::probe(&group_total, h.total(), &[]) {
            Ok(r) => Some(r.isomorphic),
            Err(e) => {
                notes.push(format!("isomorphism search stopped: {e}"));
                None
            }
        }
    } else {
        notes.push(format!(
            "{} objects against {}",
            group_model.objects, groupoid_model.objects
        ));
        Some(false)
    };
    if morphisms_coincide {
        notes.push("morphism counts coincide".into());
    } else {
        notes.push(format!(
            "morphism counts differ: {} against {}",
            group_model.morphisms, groupoid_model.morphisms
        ));
    }
    Ok(ComparisonReport {
        group_model,
        groupoid_model,
        morphisms_coincide,
        isomorphic,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    Singleton,
    Discrete,
    OneObjectManyArrows,
    General,
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseKind::Singleton => "singleton",
            BaseKind::Discrete => "discrete",
            BaseKind::OneObjectManyArrows => "one-object-many-arrows",
            BaseKind::General => "general",
        })
    }
}

/// Where the action lands: sets, categories, or an unspecified category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodomainKind {
    Set,
    Cat,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaseClass {
    pub kind: BaseKind,
    /// What an action on such a base makes of its value `X`.
    pub label: &'static str,
}

pub fn classify_base(b: &FinCat, codomain: CodomainKind) -> BaseClass {
    let all_identities = (0..b.morphism_count()).all(|f| b.is_identity(f));
    let kind = match (b.object_count(), all_identities) {
        (1, true) => BaseKind::Singleton,
        (_, true) => BaseKind::Discrete,
        (1, false) => BaseKind::OneObjectManyArrows,
        _ => BaseKind::General,
    };
    use BaseKind::*;
    let label = match (codomain, kind) {
        (CodomainKind::Set, Singleton) => "X modeled as single whole set",
        (CodomainKind::Set, Discrete) => "X a set partitioned into subsets",
        (CodomainKind::Set, OneObjectManyArrows) => "X as endoset on some set",
        (CodomainKind::Set, General) => "X as small category",
        (CodomainKind::Cat, Singleton) => "X as small 1-category",
        (CodomainKind::Cat, Discrete) => "X as coproduct category",
        (CodomainKind::Cat, OneObjectManyArrows) => {
            "X as endofunctor category,(strict)Monoidal category"
        }
        (CodomainKind::Cat, General) => "X as 2-category",
        (CodomainKind::General, Singleton) => "X modeled as object in D",
        (CodomainKind::General, Discrete) => "X modeled as coproduct object",
        (CodomainKind::General, OneObjectManyArrows) => "X modeled as monoid object",
        (CodomainKind::General, General) => "X modeled as category object",
    };
    BaseClass { kind, label }
}
