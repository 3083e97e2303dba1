use std::sync::Arc;

use serde::Serialize;

use super::{grothendieck_complete, Action, Variant};
use crate::algebra::{group_as_category, GroupAction};
use crate::budget::Budget;
use crate::category::{
    count_obstruction, find_isomorphism_seeded, opposite, FinCat, Isomorphism, Morphism,
    SetValuedAction,
};
use crate::error::Result;

/// Outcome of an isomorphism probe between two constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub isomorphic: bool,
    pub witness: Option<Isomorphism>,
    /// `(objects, morphisms)` of the left and right side.
    pub counts: [(usize, usize); 2],
    pub obstruction: Option<String>,
}

#[derive(Serialize)]
struct IsoSummary<'a> {
    isomorphic: bool,
    left: (usize, usize),
    right: (usize, usize),
    obstruction: &'a Option<String>,
    object_map: Option<Vec<(&'a str, &'a str)>>,
}

impl IsoReport {
    pub(crate) fn probe(c: &Arc<FinCat>, d: &Arc<FinCat>, seed: &[(usize, usize)]) -> Result<IsoReport> {
        let counts = [
            (c.object_count(), c.morphism_count()),
            (d.object_count(), d.morphism_count()),
        ];
        let obstruction = count_obstruction(c, d);
        let witness = if obstruction.is_some() {
            None
        } else {
            find_isomorphism_seeded(c, d, seed, Budget::iso_default())?
        };
        Ok(IsoReport {
            isomorphic: witness.is_some(),
            witness,
            counts,
            obstruction,
        })
    }

    /// A serializable digest: counts, obstruction and the object map.
    pub fn summary(&self) -> serde_json::Value {
        let s = IsoSummary {
            isomorphic: self.isomorphic,
            left: self.counts[0],
            right: self.counts[1],
            obstruction: &self.obstruction,
            object_map: self
                .witness
                .as_ref()
                .map(|w| w.forward.object_pairs().collect()),
        };
        serde_json::to_value(s).expect("plain data serializes")
    }
}

/// `X//G`: objects are the points, morphisms `(g,x): x → g·x`, composed by
/// `(g', g·x) ∘ (g, x) = (g'g, x)`.
pub fn transformation_groupoid(a: &GroupAction) -> FinCat {
    let g = &a.group;
    let (k, n) = (g.order(), a.carrier.len());
    let morphisms = (0..k * n)
        .map(|i| {
            let (gi, x) = (i / n, i % n);
            Morphism {
                name: format!("({},{})", g.name(gi), a.carrier[x]),
                src: x,
                tgt: a.act(gi, x),
            }
        })
        .collect::<Vec<_>>();
    let m = k * n;
    let mut table = vec![None; m * m];
    for g1 in 0..k {
        for x in 0..n {
            let y = a.act(g1, x);
            for g2 in 0..k {
                table[(g2 * n + y) * m + (g1 * n + x)] = Some(g.mul(g2, g1) * n + x);
            }
        }
    }
    let identity = (0..n).map(|x| g.identity() * n + x).collect();
    FinCat::assemble(a.carrier.clone(), morphisms, identity, table)
}

/// Compares `X//G` with the right completion of the induced contravariant
/// action `g ↦ μ(g⁻¹, -)` on the one-object category of `G`, seeding the
/// search with the relabeling `(*,x) ↦ x`.
pub fn check_transformation_equals_completion(a: &GroupAction) -> Result<IsoReport> {
    let xg = Arc::new(transformation_groupoid(a));
    let g = &a.group;
    let n = a.carrier.len();
    let action = SetValuedAction {
        base: Arc::new(opposite(&group_as_category(g))),
        fibers: vec![a.carrier.clone()],
        act: (0..g.order())
            .map(|h| (0..n).map(|x| a.act(g.inverse(h), x)).collect())
            .collect(),
    };
    let fc = grothendieck_complete(&Action::Set(action), Variant::ConcreteRight)?;
    let seed: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    IsoReport::probe(&fc.total, &xg, &seed)
}
