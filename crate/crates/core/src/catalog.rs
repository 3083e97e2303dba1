//! Named instances: the worked examples the tool ships with, exportable as
//! documents with `fibrato catalog NAME`.

use std::sync::Arc;

use crate::algebra::{close_generators, group_as_category, standard_group, GroupAction, GroupKind, Perm, PermGroup};
use crate::category::{codiscrete_groupoid, codiscrete_on, product, CatValuedAction, FinCat, FinFunctor, Mor, SetValuedAction};
use crate::geometry::{GroupoidGeometry, KleinPair};
use crate::grothendieck::transformation_groupoid;
use crate::hierarchy::{inner_completions, transport, HierarchySpec};
use crate::io::Document;

pub fn cyclic(n: usize) -> Arc<PermGroup> {
    Arc::new(standard_group(GroupKind::Cyclic, n))
}

pub fn dihedral(n: usize) -> Arc<PermGroup> {
    Arc::new(standard_group(GroupKind::Dihedral, n))
}

pub fn symmetric(n: usize) -> Arc<PermGroup> {
    Arc::new(standard_group(GroupKind::Symmetric, n))
}

/// The subgroup of `S_n` generated by the given one-line permutations.
pub fn generated(degree: usize, generators: &[(&str, &[usize])]) -> Arc<PermGroup> {
    let gens = generators
        .iter()
        .map(|(n, l)| (n.to_string(), Perm::from_one_line(l).expect("valid permutation")))
        .collect();
    Arc::new(close_generators(degree, gens, crate::algebra::CLOSURE_BUDGET).expect("small group"))
}

pub fn c3_rotation() -> GroupAction {
    GroupAction::natural(cyclic(3))
}

pub fn d3_natural() -> GroupAction {
    GroupAction::natural(dihedral(3))
}

/// `S3` with the subgroup generated by the transposition of 1 and 2.
pub fn s3_transposition() -> KleinPair {
    KleinPair {
        group: symmetric(3),
        subgroup: generated(3, &[("t", &[2, 1, 3])]),
    }
}

fn singletons(base: Arc<FinCat>, points: &[&str]) -> SetValuedAction {
    SetValuedAction {
        fibers: points.iter().map(|p| vec![p.to_string()]).collect(),
        act: vec![vec![0]; base.morphism_count()],
        base,
    }
}

/// Two blocks of three points. Each block is a codiscrete groupoid with
/// singleton fibers and the outer codiscrete groupoid on {A, B} moves
/// block to block by position.
pub fn groupoid_hierarchy() -> HierarchySpec {
    let outer_base = Arc::new(codiscrete_on(["A", "B"]));
    let inner = vec![
        singletons(Arc::new(codiscrete_on(["a1", "a2", "a3"])), &["x1", "x2", "x3"]),
        singletons(Arc::new(codiscrete_on(["b1", "b2", "b3"])), &["x4", "x5", "x6"]),
    ];
    let comp = inner_completions(&inner, &outer_base).expect("singleton fibers");
    let outer_act = outer_base
        .morphisms()
        .iter()
        .map(|m| {
            let (from, to) = (&comp[m.src], &comp[m.tgt]);
            let base = FinFunctor::new(from.base.clone(), to.base.clone(), (0..3).collect(), (0..9).collect());
            transport(from, to, &base, &[0, 1, 2]).expect("position transport")
        })
        .collect();
    HierarchySpec {
        outer_base,
        inner,
        outer_act,
    }
}

/// Index permutation of `C3 × C3` exchanging the factors.
fn factor_swap() -> Vec<Mor> {
    (0..9).map(|i| (i % 3) * 3 + i / 3).collect()
}

/// `Z2` exchanging the factors of `C3 × C3`, over a single fiber point.
pub fn group_hierarchy() -> HierarchySpec {
    let z2 = Arc::new(group_as_category(&cyclic(2)));
    let c3 = group_as_category(&cyclic(3));
    let sq = Arc::new(product(&c3, &c3));
    let inner = vec![singletons(sq.clone(), &["Y"])];
    let comp = inner_completions(&inner, &z2).expect("singleton fiber");
    let outer_act = (0..2)
        .map(|t| {
            let mor = if t == 0 { (0..9).collect() } else { factor_swap() };
            let base = FinFunctor::new(sq.clone(), sq.clone(), vec![0], mor);
            transport(&comp[0], &comp[0], &base, &[0]).expect("swap transport")
        })
        .collect();
    HierarchySpec {
        outer_base: z2,
        inner,
        outer_act,
    }
}

/// The same factor exchange as a Cat-valued action of `Z2`.
pub fn squares_swap() -> CatValuedAction {
    let z2 = Arc::new(group_as_category(&cyclic(2)));
    let c3 = group_as_category(&cyclic(3));
    let sq = Arc::new(product(&c3, &c3));
    let act = (0..2)
        .map(|t| {
            let mor = if t == 0 { (0..9).collect() } else { factor_swap() };
            FinFunctor::new(sq.clone(), sq.clone(), vec![0], mor)
        })
        .collect();
    CatValuedAction {
        base: z2,
        fibers: vec![sq],
        act,
    }
}

/// `X//D3` on three points with the subgroupoid of all loops.
pub fn d3_geometry() -> GroupoidGeometry {
    let xg = Arc::new(transformation_groupoid(&d3_natural()));
    let loops = (0..3).flat_map(|x| xg.hom(x, x).to_vec()).collect();
    GroupoidGeometry::new(xg, loops).expect("loops form a wide subgroupoid")
}

pub type Builder = fn() -> Document;

/// Every named instance, in listing order.
pub const ENTRIES: &[(&str, &str, Builder)] = &[
    ("c3", "cyclic group of order 3 as a one-object category", || {
        Document::Category(group_as_category(&cyclic(3)))
    }),
    ("codiscrete-3", "codiscrete groupoid on three objects", || {
        Document::Category(codiscrete_groupoid(3))
    }),
    ("c3-rot", "C3 rotating the points 1 2 3", || Document::Action(c3_rotation())),
    ("d3-nat", "D3 on the vertices 1 2 3", || Document::Action(d3_natural())),
    ("c3-rot-functor", "the rotation action as a functor into Set", || {
        Document::SetValuedAction(c3_rotation().to_set_valued())
    }),
    ("squares-swap", "Z2 exchanging the factors of C3 x C3", || {
        Document::CatValuedAction(squares_swap())
    }),
    ("group-hierarchy", "Z2 over C3 x C3 with one fiber point", || {
        Document::Hierarchy(group_hierarchy())
    }),
    ("groupoid-hierarchy", "two codiscrete blocks of three points", || {
        Document::Hierarchy(groupoid_hierarchy())
    }),
    ("s3-h12", "S3 with the subgroup generated by (1 2)", || {
        Document::Klein(s3_transposition())
    }),
    ("s3-trivial", "S3 with the trivial subgroup", || {
        Document::Klein(KleinPair {
            group: symmetric(3),
            subgroup: generated(3, &[]),
        })
    }),
    ("d3-geometry", "X//D3 with all loops as subgroupoid", || {
        Document::GroupoidGeometry(d3_geometry())
    }),
];

pub fn lookup(name: &str) -> Option<Document> {
    ENTRIES.iter().find(|(n, _, _)| *n == name).map(|(_, _, build)| build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse, to_json, Format};

    #[test]
    fn every_entry_roundtrips() {
        for (name, _, build) in ENTRIES {
            let doc = build();
            let text = to_json(&doc);
            let back = parse(&text, Format::Json).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back, doc, "{name}");
        }
    }
}
