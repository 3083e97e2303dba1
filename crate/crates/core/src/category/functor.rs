use std::sync::Arc;

use super::{FinCat, Mor, Ob};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A map of finite categories, stored as index tables.
///
/// Construction only checks that the tables are total and in range; the
/// functor laws are decided by [`check_functor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub dom: Arc<FinCat>,
    pub cod: Arc<FinCat>,
    pub obj: Vec<Ob>,
    pub mor: Vec<Mor>,
}

impl FinFunctor {
    /// # Panics
    ///
    /// Panics if a table has the wrong length or an index is out of range.
    pub fn new(dom: Arc<FinCat>, cod: Arc<FinCat>, obj: Vec<Ob>, mor: Vec<Mor>) -> FinFunctor {
        assert_eq!(obj.len(), dom.object_count(), "object table length");
        assert_eq!(mor.len(), dom.morphism_count(), "morphism table length");
        assert!(obj.iter().all(|&x| x < cod.object_count()));
        assert!(mor.iter().all(|&f| f < cod.morphism_count()));
        FinFunctor { dom, cod, obj, mor }
    }

    /// Builds a functor from name pairs. Every object and morphism of the
    /// domain must be mapped.
    pub fn from_names<'a>(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        objects: impl IntoIterator<Item = (&'a str, &'a str)>,
        morphisms: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<FinFunctor> {
        let mut obj = vec![None; dom.object_count()];
        for (a, b) in objects {
            let x = dom
                .ob(a)
                .ok_or_else(|| Error::dangling("object", a, "functor domain"))?;
            let y = cod
                .ob(b)
                .ok_or_else(|| Error::dangling("object", b, "functor codomain"))?;
            obj[x] = Some(y);
        }
        let mut mor = vec![None; dom.morphism_count()];
        for (a, b) in morphisms {
            let f = dom
                .mor(a)
                .ok_or_else(|| Error::dangling("morphism", a, "functor domain"))?;
            let g = cod
                .mor(b)
                .ok_or_else(|| Error::dangling("morphism", b, "functor codomain"))?;
            mor[f] = Some(g);
        }
        let obj = obj
            .iter()
            .enumerate()
            .map(|(x, y)| {
                y.ok_or_else(|| {
                    Error::IncompleteTable(format!("object `{}` is not mapped", dom.ob_name(x)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mor = mor
            .iter()
            .enumerate()
            .map(|(f, g)| {
                g.ok_or_else(|| {
                    Error::IncompleteTable(format!(
                        "morphism `{}` is not mapped",
                        dom.mor_name(f)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFunctor { dom, cod, obj, mor })
    }

    pub fn identity(c: Arc<FinCat>) -> FinFunctor {
        let obj = (0..c.object_count()).collect();
        let mor = (0..c.morphism_count()).collect();
        FinFunctor {
            dom: c.clone(),
            cod: c,
            obj,
            mor,
        }
    }

    /// The functor sending everything to one object and its identity.
    pub fn constant(dom: Arc<FinCat>, cod: Arc<FinCat>, target: Ob) -> FinFunctor {
        let id = cod.id(target);
        FinFunctor {
            obj: vec![target; dom.object_count()],
            mor: vec![id; dom.morphism_count()],
            dom,
            cod,
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    ///
    /// # Panics
    ///
    /// Panics if `first.cod` differs from `self.dom`.
    pub fn after(&self, first: &FinFunctor) -> FinFunctor {
        assert!(
            Arc::ptr_eq(&first.cod, &self.dom) || *first.cod == *self.dom,
            "functor composition across different categories"
        );
        FinFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj: first.obj.iter().map(|&x| self.obj[x]).collect(),
            mor: first.mor.iter().map(|&f| self.mor[f]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self.dom == *self.cod
            && self.obj.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// Object and morphism maps as name pairs, in domain order.
    pub fn object_pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.obj
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.dom.ob_name(x), self.cod.ob_name(y)))
    }

    pub fn morphism_pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.mor
            .iter()
            .enumerate()
            .map(|(f, &g)| (self.dom.mor_name(f), self.cod.mor_name(g)))
    }
}

/// Checks that `f` preserves endpoints, identities and composites.
///
/// Law names: `source`, `target`, `identity`, `composition`.
pub fn check_functor(f: &FinFunctor) -> ValidationReport {
    let (c, d) = (&*f.dom, &*f.cod);
    let mut report = ValidationReport::new();
    for a in 0..c.morphism_count() {
        let b = f.mor[a];
        if d.src(b) != f.obj[c.src(a)] {
            report.push("source", [c.mor_name(a)]);
        }
        if d.tgt(b) != f.obj[c.tgt(a)] {
            report.push("target", [c.mor_name(a)]);
        }
    }
    for x in 0..c.object_count() {
        if f.mor[c.id(x)] != d.id(f.obj[x]) {
            report.push("identity", [c.ob_name(x)]);
        }
    }
    for (g, h, gh) in c.compose_entries() {
        if !c.composable(g, h) {
            continue;
        }
        let image = d.compose(f.mor[g], f.mor[h]);
        if image != Some(f.mor[gh]) {
            report.push("composition", [c.mor_name(g), c.mor_name(h)]);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::tests::c3;
    use crate::category::discrete_category;

    #[test]
    fn identity_functor_is_valid() {
        let c = Arc::new(c3());
        assert!(check_functor(&FinFunctor::identity(c)).ok);
    }

    #[test]
    fn constant_collapse_is_valid() {
        let c = Arc::new(c3());
        let t = Arc::new(discrete_category(["*"]));
        let k = FinFunctor::constant(c, t, 0);
        assert!(k.mor.iter().all(|&m| m == 0));
        assert!(check_functor(&k).ok);
    }

    #[test]
    fn half_collapse_fails_on_r_r() {
        let c = Arc::new(c3());
        let f = FinFunctor::from_names(
            c.clone(),
            c.clone(),
            [("*", "*")],
            [("id", "id"), ("r", "r"), ("r2", "id")],
        )
        .unwrap();
        // Oracle: F(r)∘F(r) = r∘r = r2, but F(r∘r) = F(r2) = id.
        let lhs = c.comp(f.mor[c.mor("r").unwrap()], f.mor[c.mor("r").unwrap()]);
        assert_ne!(lhs, f.mor[c.mor("r2").unwrap()]);
        let report = check_functor(&f);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "composition" && v.witness == ["r", "r"]));
    }

    #[test]
    fn composition_of_valid_functors_is_valid() {
        let c = Arc::new(c3());
        let inv = FinFunctor::from_names(
            c.clone(),
            c.clone(),
            [("*", "*")],
            [("id", "id"), ("r", "r2"), ("r2", "r")],
        )
        .unwrap();
        assert!(check_functor(&inv).ok);
        let twice = inv.after(&inv);
        assert!(check_functor(&twice).ok);
        assert!(twice.is_identity());
    }
}
