use std::sync::Arc;

use super::{Perm, PermGroup};
use crate::category::SetValuedAction;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A left action of a permutation group on a named finite set.
///
/// `table[g * |X| + x]` is `μ(g, x)` as a carrier index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub group: Arc<PermGroup>,
    pub carrier: Vec<String>,
    pub table: Vec<usize>,
}

/// A homomorphism from a group into the permutations of a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTable {
    pub group: Arc<PermGroup>,
    pub carrier: Vec<String>,
    pub images: Vec<Perm>,
}

/// One orbit, its first point in carrier order, and that point's stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub representative: usize,
    pub stabilizer: PermGroup,
}

impl GroupAction {
    /// The group acting on `1..=degree` by applying its permutations.
    pub fn natural(group: Arc<PermGroup>) -> GroupAction {
        let n = group.degree();
        let table = group
            .elements()
            .iter()
            .flat_map(|p| (0..n).map(move |x| p.apply(x)))
            .collect();
        GroupAction {
            carrier: (1..=n).map(|i| i.to_string()).collect(),
            group,
            table,
        }
    }

    /// Builds an action from `(element, point, image)` name triples.
    pub fn from_names(
        group: Arc<PermGroup>,
        carrier: Vec<String>,
        entries: &[(String, String, String)],
    ) -> Result<GroupAction> {
        for (i, p) in carrier.iter().enumerate() {
            if carrier[..i].contains(p) {
                return Err(Error::DuplicateName {
                    kind: "carrier point",
                    name: p.clone(),
                });
            }
        }
        let n = carrier.len();
        let point = |name: &str| {
            carrier
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| Error::dangling("carrier point", name, "action table"))
        };
        let mut table = vec![None; group.order() * n];
        for (g, x, y) in entries {
            let gi = group
                .by_name(g)
                .ok_or_else(|| Error::dangling("group element", g, "action table"))?;
            table[gi * n + point(x)?] = Some(point(y)?);
        }
        let table = table
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::IncompleteTable(format!(
                        "no image for ({}, {})",
                        group.name(i / n),
                        carrier[i % n]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAction {
            group,
            carrier,
            table,
        })
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g * self.carrier.len() + x]
    }

    /// The action as a set-valued functor on the one-object category of the
    /// group.
    pub fn to_set_valued(&self) -> SetValuedAction {
        let base = Arc::new(super::group_as_category(&self.group));
        let n = self.carrier.len();
        SetValuedAction {
            base,
            fibers: vec![self.carrier.clone()],
            act: (0..self.group.order())
                .map(|g| self.table[g * n..(g + 1) * n].to_vec())
                .collect(),
        }
    }
}

/// Checks `μ(e, x) = x` and `μ(g₂, μ(g₁, x)) = μ(g₂g₁, x)`.
///
/// Law names: `identity` (witness `(e, x)`), `compatibility` (witness
/// `(g₂, g₁, x)`).
pub fn check_action(a: &GroupAction) -> Result<ValidationReport> {
    let (k, n) = (a.group.order(), a.carrier.len());
    if a.table.len() != k * n || a.table.iter().any(|&y| y >= n) {
        return Err(Error::IncompleteTable(
            "action table must cover group × carrier".into(),
        ));
    }
    let mut report = ValidationReport::new();
    let e = a.group.identity();
    for x in 0..n {
        if a.act(e, x) != x {
            report.push("identity", [a.group.name(e), &a.carrier[x]]);
        }
    }
    for g2 in 0..k {
        for g1 in 0..k {
            let g = a.group.mul(g2, g1);
            for x in 0..n {
                if a.act(g2, a.act(g1, x)) != a.act(g, x) {
                    report.push(
                        "compatibility",
                        [a.group.name(g2), a.group.name(g1), &a.carrier[x]],
                    );
                }
            }
        }
    }
    Ok(report)
}

/// `φ(g)(x) = μ(g, x)`.
///
/// # Panics
///
/// Panics if some `μ(g, -)` is not a bijection, which a valid action rules
/// out.
pub fn action_to_rep(a: &GroupAction) -> RepTable {
    let n = a.carrier.len();
    let images = (0..a.group.order())
        .map(|g| {
            Perm::from_images(a.table[g * n..(g + 1) * n].to_vec())
                .expect("a valid action acts by bijections")
        })
        .collect();
    RepTable {
        group: a.group.clone(),
        carrier: a.carrier.clone(),
        images,
    }
}

/// `μ(g, x) = φ(g)(x)`.
pub fn rep_to_action(r: &RepTable) -> GroupAction {
    GroupAction {
        group: r.group.clone(),
        carrier: r.carrier.clone(),
        table: r.images.iter().flat_map(|p| p.images().to_vec()).collect(),
    }
}

/// Checks that `φ` is a homomorphism into the permutations of the carrier.
///
/// Law names: `degree`, `identity`, `homomorphism`.
pub fn check_rep(r: &RepTable) -> ValidationReport {
    let g = &r.group;
    let mut report = ValidationReport::new();
    for (a, p) in r.images.iter().enumerate() {
        if p.degree() != r.carrier.len() {
            report.push("degree", [g.name(a)]);
        }
    }
    if !report.ok || r.images.len() != g.order() {
        report.push("degree", ["images"]);
        return report;
    }
    if !r.images[g.identity()].is_identity() {
        report.push("identity", [g.name(g.identity())]);
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if r.images[g.mul(a, b)] != r.images[a].compose(&r.images[b]) {
                report.push("homomorphism", [g.name(a), g.name(b)]);
            }
        }
    }
    report
}

/// Orbits in order of their least point, each with the stabilizer of that
/// point as a subgroup of the acting group.
pub fn orbits_stabilizers(a: &GroupAction) -> Vec<Orbit> {
    let n = a.carrier.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut points: Vec<usize> = (0..a.group.order()).map(|g| a.act(g, x)).collect();
        points.sort_unstable();
        points.dedup();
        for &p in &points {
            seen[p] = true;
        }
        let fixing: Vec<usize> = (0..a.group.order())
            .filter(|&g| a.act(g, x) == x)
            .collect();
        let stabilizer = a
            .group
            .subgroup(&fixing)
            .expect("a stabilizer of a valid action is a subgroup");
        out.push(Orbit {
            points,
            representative: x,
            stabilizer,
        });
    }
    out
}
