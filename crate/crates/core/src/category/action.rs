use std::sync::Arc;

use super::{check_functor, discrete_category, FinCat, FinFunctor, Mor};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A functor from `base` to finite sets.
///
/// `act[f][i]` is the index, within `fibers[tgt f]`, of the image of the
/// `i`-th element of `fibers[src f]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedAction {
    pub base: Arc<FinCat>,
    pub fibers: Vec<Vec<String>>,
    pub act: Vec<Vec<usize>>,
}

/// A strict functor from `base` to finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatValuedAction {
    pub base: Arc<FinCat>,
    pub fibers: Vec<Arc<FinCat>>,
    pub act: Vec<FinFunctor>,
}

fn first_violation(report: ValidationReport) -> Result<()> {
    match report.violations.into_iter().next() {
        None => Ok(()),
        Some(v) => Err(Error::NonFunctorialAction {
            law: v.law,
            witness: format!("({})", v.witness.join(", ")),
        }),
    }
}

impl SetValuedAction {
    /// Builds an action from names. Every base object needs a fiber and
    /// every base morphism a total function on its source fiber.
    pub fn from_names(
        base: Arc<FinCat>,
        fibers: &[(String, Vec<String>)],
        act: &[(String, Vec<(String, String)>)],
    ) -> Result<SetValuedAction> {
        let mut fib: Vec<Option<Vec<String>>> = vec![None; base.object_count()];
        for (o, pts) in fibers {
            let x = base
                .ob(o)
                .ok_or_else(|| Error::dangling("object", o, "fibers"))?;
            for (i, p) in pts.iter().enumerate() {
                if pts[..i].contains(p) {
                    return Err(Error::DuplicateName {
                        kind: "fiber point",
                        name: p.clone(),
                    });
                }
            }
            fib[x] = Some(pts.clone());
        }
        let fibers = fib
            .into_iter()
            .enumerate()
            .map(|(x, f)| {
                f.ok_or_else(|| {
                    Error::IncompleteTable(format!("no fiber for object `{}`", base.ob_name(x)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut table: Vec<Option<Vec<usize>>> = vec![None; base.morphism_count()];
        for (name, pairs) in act {
            let f = base
                .mor(name)
                .ok_or_else(|| Error::dangling("morphism", name, "act"))?;
            let (s, t) = (&fibers[base.src(f)], &fibers[base.tgt(f)]);
            let mut row = vec![None; s.len()];
            for (a, b) in pairs {
                let ctx = format!("act of `{name}`");
                let i = s
                    .iter()
                    .position(|p| p == a)
                    .ok_or_else(|| Error::dangling("fiber point", a, &ctx))?;
                let j = t
                    .iter()
                    .position(|p| p == b)
                    .ok_or_else(|| Error::dangling("fiber point", b, &ctx))?;
                row[i] = Some(j);
            }
            let row = row
                .into_iter()
                .enumerate()
                .map(|(i, j)| {
                    j.ok_or_else(|| {
                        Error::IncompleteTable(format!("act of `{name}` misses point `{}`", s[i]))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            table[f] = Some(row);
        }
        let act = table
            .into_iter()
            .enumerate()
            .map(|(f, r)| {
                r.ok_or_else(|| {
                    Error::IncompleteTable(format!("no action for morphism `{}`", base.mor_name(f)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetValuedAction { base, fibers, act })
    }

    pub fn image(&self, f: Mor, i: usize) -> usize {
        self.act[f][i]
    }

    /// Law names: `shape`, `identity`, `composition`.
    pub fn check(&self) -> ValidationReport {
        let b = &*self.base;
        let mut report = ValidationReport::new();
        for f in 0..b.morphism_count() {
            let (s, t) = (&self.fibers[b.src(f)], &self.fibers[b.tgt(f)]);
            if self.act[f].len() != s.len() || self.act[f].iter().any(|&j| j >= t.len()) {
                report.push("shape", [b.mor_name(f)]);
            }
        }
        if !report.ok {
            return report;
        }
        for x in 0..b.object_count() {
            let id = b.id(x);
            for (i, &j) in self.act[id].iter().enumerate() {
                if i != j {
                    report.push("identity", [b.mor_name(id), &self.fibers[x][i]]);
                }
            }
        }
        for (g, f, gf) in b.compose_entries() {
            if !b.composable(g, f) {
                continue;
            }
            for (i, p) in self.fibers[b.src(f)].iter().enumerate() {
                if self.act[g][self.act[f][i]] != self.act[gf][i] {
                    report.push("composition", [b.mor_name(g), b.mor_name(f), p]);
                }
            }
        }
        report
    }

    pub fn validate(&self) -> Result<()> {
        first_violation(self.check())
    }

    /// Each fiber as a discrete category, each function as a functor.
    pub fn to_cat_valued(&self) -> CatValuedAction {
        let fibers: Vec<Arc<FinCat>> = self
            .fibers
            .iter()
            .map(|pts| Arc::new(discrete_category(pts.iter().cloned())))
            .collect();
        let b = &*self.base;
        let act = (0..b.morphism_count())
            .map(|f| {
                let row = self.act[f].clone();
                // Discrete categories list identities in object order.
                FinFunctor::new(
                    fibers[b.src(f)].clone(),
                    fibers[b.tgt(f)].clone(),
                    row.clone(),
                    row,
                )
            })
            .collect();
        CatValuedAction {
            base: self.base.clone(),
            fibers,
            act,
        }
    }
}

impl CatValuedAction {
    /// Law names: `shape`, `functor`, `identity`, `composition`.
    pub fn check(&self) -> ValidationReport {
        let b = &*self.base;
        let mut report = ValidationReport::new();
        for f in 0..b.morphism_count() {
            let a = &self.act[f];
            if *a.dom != *self.fibers[b.src(f)] || *a.cod != *self.fibers[b.tgt(f)] {
                report.push("shape", [b.mor_name(f)]);
                continue;
            }
            for v in check_functor(a).violations {
                let mut w = vec![b.mor_name(f).to_string(), v.law];
                w.extend(v.witness);
                report.push("functor", w);
            }
        }
        if !report.ok {
            return report;
        }
        for x in 0..b.object_count() {
            if !self.act[b.id(x)].is_identity() {
                report.push("identity", [b.mor_name(b.id(x))]);
            }
        }
        for (g, f, gf) in b.compose_entries() {
            if !b.composable(g, f) {
                continue;
            }
            let lhs = self.act[g].after(&self.act[f]);
            let rhs = &self.act[gf];
            if lhs.obj != rhs.obj || lhs.mor != rhs.mor {
                report.push("composition", [b.mor_name(g), b.mor_name(f)]);
            }
        }
        report
    }

    pub fn validate(&self) -> Result<()> {
        first_violation(self.check())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::tests::c3;

    fn rotation() -> SetValuedAction {
        let pts = |v: &[(&str, &str)]| {
            v.iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>()
        };
        SetValuedAction::from_names(
            Arc::new(c3()),
            &[("*".into(), vec!["1".into(), "2".into(), "3".into()])],
            &[
                ("id".into(), pts(&[("1", "1"), ("2", "2"), ("3", "3")])),
                ("r".into(), pts(&[("1", "2"), ("2", "3"), ("3", "1")])),
                ("r2".into(), pts(&[("1", "3"), ("2", "1"), ("3", "2")])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rotation_is_functorial() {
        let a = rotation();
        assert!(a.check().ok);
        assert!(a.to_cat_valued().check().ok);
    }

    #[test]
    fn broken_composite_is_named() {
        let mut a = rotation();
        a.act[2] = vec![0, 1, 2];
        let err = a.validate().unwrap_err();
        assert_eq!(err.name(), "NonFunctorialAction");
        assert!(a.to_cat_valued().check().has_law("composition"));
    }

    #[test]
    fn missing_point_is_incomplete() {
        let r = SetValuedAction::from_names(
            Arc::new(c3()),
            &[("*".into(), vec!["1".into()])],
            &[("id".into(), vec![])],
        );
        assert!(matches!(r, Err(Error::IncompleteTable(_))));
    }
}
