//! Explicit finite categories.
//!
//! A [`FinCat`] stores every composite explicitly, identities included, so
//! that the category laws can be checked exhaustively. Objects and morphisms
//! are addressed by dense indices ([`Ob`], [`Mor`]) in declaration order;
//! names are kept alongside for reporting and serialization.

mod action;
mod construct;
mod functor;
mod groupoid;
mod iso;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

pub use action::{CatValuedAction, SetValuedAction};
pub use construct::{
    codiscrete_groupoid, codiscrete_on, coproduct, coproduct_tagged, discrete_category, functor_graph_category,
    opposite, product, subcategory, vertex_group,
};
pub use functor::{check_functor, FinFunctor};
pub use groupoid::{connected_components, inverse_of, is_groupoid};
pub use iso::{
    all_isomorphisms, count_obstruction, find_isomorphism, find_isomorphism_seeded, Isomorphism,
};

/// Object index.
pub type Ob = usize;
/// Morphism index.
pub type Mor = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: Ob,
    pub tgt: Ob,
}

/// A finite category given by an explicit composition table.
///
/// The table is dense over all ordered pairs of morphisms; a well-formed
/// category has entries exactly on the composable pairs `(g, f)` with
/// `tgt f = src g`. Malformed tables are representable so that
/// [`check_category`] can report on them.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Mor>,
    table: Vec<Option<Mor>>,
    ob_index: HashMap<String, Ob>,
    mor_index: HashMap<String, Mor>,
    homs: Vec<Vec<Mor>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.table == other.table
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self
                    .morphisms
                    .iter()
                    .map(|m| {
                        format!(
                            "{}: {} -> {}",
                            m.name, self.objects[m.src], self.objects[m.tgt]
                        )
                    })
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl FinCat {
    pub fn builder() -> CatBuilder {
        CatBuilder::default()
    }

    /// Assembles a category from index data produced by a construction.
    ///
    /// # Panics
    ///
    /// Panics if two objects or two morphisms share a name. Constructions
    /// derive names from structured tags, so this only fires on inputs whose
    /// names already collide under tagging.
    pub(crate) fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        table: Vec<Option<Mor>>,
    ) -> FinCat {
        Self::try_assemble(objects, morphisms, identity, table)
            .unwrap_or_else(|e| panic!("construction produced a clashing name: {e}"))
    }

    pub(crate) fn try_assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<Mor>,
        table: Vec<Option<Mor>>,
    ) -> Result<FinCat> {
        let n = objects.len();
        let m = morphisms.len();
        assert_eq!(identity.len(), n, "one identity per object");
        assert_eq!(table.len(), m * m, "dense composition table");
        let mut ob_index = HashMap::with_capacity(n);
        for (i, name) in objects.iter().enumerate() {
            if ob_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName {
                    kind: "object",
                    name: name.clone(),
                });
            }
        }
        let mut mor_index = HashMap::with_capacity(m);
        let mut homs = vec![Vec::new(); n * n];
        for (i, mor) in morphisms.iter().enumerate() {
            if mor_index.insert(mor.name.clone(), i).is_some() {
                return Err(Error::DuplicateName {
                    kind: "morphism",
                    name: mor.name.clone(),
                });
            }
            homs[mor.src * n + mor.tgt].push(i);
        }
        Ok(FinCat {
            objects,
            morphisms,
            identity,
            table,
            ob_index,
            mor_index,
            homs,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn ob_name(&self, x: Ob) -> &str {
        &self.objects[x]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.morphisms[f].name
    }

    pub fn ob(&self, name: &str) -> Option<Ob> {
        self.ob_index.get(name).copied()
    }

    pub fn mor(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }

    pub fn src(&self, f: Mor) -> Ob {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: Mor) -> Ob {
        self.morphisms[f].tgt
    }

    pub fn id(&self, x: Ob) -> Mor {
        self.identity[x]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identity
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity[self.src(f)] == f
    }

    /// The table entry for `g ∘ f`, whether or not the pair is composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.table[g * self.morphisms.len() + f]
    }

    /// `g ∘ f` for a composable pair of a valid category.
    ///
    /// # Panics
    ///
    /// Panics if the table has no entry for the pair.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "no composite for ({}, {})",
                self.mor_name(g),
                self.mor_name(f)
            )
        })
    }

    pub fn hom(&self, x: Ob, y: Ob) -> &[Mor] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn composable(&self, g: Mor, f: Mor) -> bool {
        self.tgt(f) == self.src(g)
    }

    /// Raw composition entries `(g, f, g∘f)` in table order.
    pub fn compose_entries(&self) -> impl Iterator<Item = (Mor, Mor, Mor)> + '_ {
        let m = self.morphisms.len();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(i, e)| e.map(|h| (i / m, i % m, h)))
    }

    /// Returns a copy with one table entry replaced; used by mutation tests
    /// and by the document layer when it needs to carry malformed input.
    pub fn with_entry(&self, g: Mor, f: Mor, value: Option<Mor>) -> FinCat {
        let mut c = self.clone();
        let m = c.morphisms.len();
        c.table[g * m + f] = value;
        c
    }

    pub fn with_identity(&self, x: Ob, f: Mor) -> FinCat {
        let mut c = self.clone();
        c.identity[x] = f;
        c
    }

    pub(crate) fn table(&self) -> &[Option<Mor>] {
        &self.table
    }
}

/// Name-based constructor for [`FinCat`].
#[derive(Debug, Clone, Default)]
pub struct CatBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    compose: Vec<(String, String, String)>,
    infer_units: bool,
    auto_identities: bool,
}

impl CatBuilder {
    pub fn object(&mut self, name: impl Into<String>) -> &mut Self {
        self.objects.push(name.into());
        self
    }

    pub fn objects<I, S>(&mut self, names: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.objects.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn morphism(
        &mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> &mut Self {
        self.morphisms.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn identity(&mut self, object: impl Into<String>, mor: impl Into<String>) -> &mut Self {
        self.identities.push((object.into(), mor.into()));
        self
    }

    /// Records `g ∘ f = h`.
    pub fn compose(
        &mut self,
        g: impl Into<String>,
        f: impl Into<String>,
        h: impl Into<String>,
    ) -> &mut Self {
        self.compose.push((g.into(), f.into(), h.into()));
        self
    }

    /// Fill in `id ∘ f = f` and `f ∘ id = f` wherever the entry is absent.
    pub fn infer_unit_entries(&mut self) -> &mut Self {
        self.infer_units = true;
        self
    }

    /// Objects without a declared identity get a fresh morphism `id_X`.
    pub fn auto_identities(&mut self) -> &mut Self {
        self.auto_identities = true;
        self
    }

    pub fn build(&self) -> Result<FinCat> {
        let mut ob_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if ob_index.insert(o.as_str(), i).is_some() {
                return Err(Error::DuplicateName {
                    kind: "object",
                    name: o.clone(),
                });
            }
        }
        let resolve_ob = |name: &str, ctx: &str| {
            ob_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::dangling("object", name, ctx))
        };
        let mut morphisms = Vec::new();
        for (name, s, t) in &self.morphisms {
            let ctx = format!("morphism `{name}`");
            morphisms.push(Morphism {
                name: name.clone(),
                src: resolve_ob(s, &ctx)?,
                tgt: resolve_ob(t, &ctx)?,
            });
        }
        let mut declared: Vec<Option<String>> = vec![None; self.objects.len()];
        for (o, f) in &self.identities {
            let x = resolve_ob(o, "identities")?;
            if declared[x].replace(f.clone()).is_some() {
                return Err(Error::DuplicateName {
                    kind: "identity for object",
                    name: o.clone(),
                });
            }
        }
        if self.auto_identities {
            for (x, d) in declared.iter_mut().enumerate() {
                if d.is_none() {
                    let name = format!("id_{}", self.objects[x]);
                    morphisms.push(Morphism {
                        name: name.clone(),
                        src: x,
                        tgt: x,
                    });
                    *d = Some(name);
                }
            }
        }
        let mut mor_index = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if mor_index.insert(m.name.clone(), i).is_some() {
                return Err(Error::DuplicateName {
                    kind: "morphism",
                    name: m.name.clone(),
                });
            }
        }
        let resolve_mor = |name: &str, ctx: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::dangling("morphism", name, ctx))
        };
        let mut identity = Vec::with_capacity(self.objects.len());
        for (x, d) in declared.iter().enumerate() {
            match d {
                Some(name) => identity.push(resolve_mor(name, "identities")?),
                None => return Err(Error::MissingIdentity(self.objects[x].clone())),
            }
        }
        let m = morphisms.len();
        let mut table = vec![None; m * m];
        for (g, f, h) in &self.compose {
            let ctx = format!("compose entry ({g}, {f})");
            let (gi, fi, hi) = (
                resolve_mor(g, &ctx)?,
                resolve_mor(f, &ctx)?,
                resolve_mor(h, &ctx)?,
            );
            match table[gi * m + fi] {
                Some(prev) if prev != hi => {
                    return Err(Error::DuplicateName {
                        kind: "compose entry",
                        name: format!("({g}, {f})"),
                    })
                }
                _ => table[gi * m + fi] = Some(hi),
            }
        }
        if self.infer_units {
            for (f, mor) in morphisms.iter().enumerate() {
                let it = identity[mor.tgt];
                let is = identity[mor.src];
                table[it * m + f].get_or_insert(f);
                table[f * m + is].get_or_insert(f);
            }
        }
        FinCat::try_assemble(self.objects.clone(), morphisms, identity, table)
    }
}

/// Exhaustively checks the category laws.
///
/// Law names in the report: `identity-endpoints`, `undefined-composite`,
/// `composite-off-domain`, `composite-endpoints`, `left-unit`, `right-unit`,
/// `associativity`. Witnesses are morphism names, outermost first.
pub fn check_category(c: &FinCat) -> ValidationReport {
    let mut report = ValidationReport::new();
    let name = |f: Mor| c.mor_name(f).to_string();
    for x in 0..c.object_count() {
        let i = c.id(x);
        if c.src(i) != x || c.tgt(i) != x {
            report.push("identity-endpoints", [c.ob_name(x).to_string(), name(i)]);
        }
    }
    let m = c.morphism_count();
    let mut domain_ok = true;
    for g in 0..m {
        for f in 0..m {
            match (c.composable(g, f), c.compose(g, f)) {
                (true, None) => {
                    domain_ok = false;
                    report.push("undefined-composite", [name(g), name(f)]);
                }
                (false, Some(_)) => {
                    report.push("composite-off-domain", [name(g), name(f)]);
                }
                (true, Some(h)) => {
                    if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) {
                        report.push("composite-endpoints", [name(g), name(f), name(h)]);
                    }
                }
                (false, None) => {}
            }
        }
    }
    for f in 0..m {
        let it = c.id(c.tgt(f));
        let is = c.id(c.src(f));
        if c.compose(it, f).is_some_and(|h| h != f) {
            report.push("left-unit", [name(it), name(f)]);
        }
        if c.compose(f, is).is_some_and(|h| h != f) {
            report.push("right-unit", [name(f), name(is)]);
        }
    }
    if !domain_ok {
        return report;
    }
    // Associativity over composable triples h ∘ g ∘ f.
    for f in 0..m {
        for y in 0..c.object_count() {
            for &g in c.hom(c.tgt(f), y) {
                let gf = c.comp(g, f);
                for z in 0..c.object_count() {
                    for &h in c.hom(y, z) {
                        let hg = c.comp(h, g);
                        let (Some(a), Some(b)) = (c.compose(h, gf), c.compose(hg, f)) else {
                            continue;
                        };
                        if a != b {
                            report.push("associativity", [name(h), name(g), name(f)]);
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn c3() -> FinCat {
        let mut b = FinCat::builder();
        b.object("*")
            .morphism("id", "*", "*")
            .morphism("r", "*", "*")
            .morphism("r2", "*", "*")
            .identity("*", "id")
            .compose("r", "r", "r2")
            .compose("r", "r2", "id")
            .compose("r2", "r", "id")
            .compose("r2", "r2", "r")
            .infer_unit_entries();
        b.build().unwrap()
    }

    /// Triple-loop oracle over every triple, independent of the hom index.
    fn assoc_witnesses(c: &FinCat) -> Vec<(String, String, String)> {
        let m = c.morphism_count();
        let mut out = Vec::new();
        for h in 0..m {
            for g in 0..m {
                for f in 0..m {
                    if c.tgt(f) != c.src(g) || c.tgt(g) != c.src(h) {
                        continue;
                    }
                    let left = c.compose(h, c.compose(g, f).unwrap()).unwrap();
                    let right = c.compose(c.compose(h, g).unwrap(), f).unwrap();
                    if left != right {
                        out.push((
                            c.mor_name(h).into(),
                            c.mor_name(g).into(),
                            c.mor_name(f).into(),
                        ));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn empty_category_is_valid() {
        let c = FinCat::builder().build().unwrap();
        assert!(check_category(&c).ok);
    }

    #[test]
    fn cyclic_three_is_valid() {
        assert!(check_category(&c3()).ok);
    }

    #[test]
    fn redirected_square_breaks_associativity() {
        let c = c3();
        let r = c.mor("r").unwrap();
        let bad = c.with_entry(r, r, Some(c.mor("id").unwrap()));
        let oracle = assoc_witnesses(&bad);
        assert!(!oracle.is_empty());
        // (r, r, r) itself balances: (r∘r)∘r = id∘r = r∘id = r∘(r∘r).
        assert!(!oracle.contains(&("r".into(), "r".into(), "r".into())));
        assert!(oracle.contains(&("r".into(), "r".into(), "r2".into())));
        let report = check_category(&bad);
        assert!(!report.ok);
        let found: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.law == "associativity")
            .map(|v| (v.witness[0].clone(), v.witness[1].clone(), v.witness[2].clone()))
            .collect();
        let mut a = found.clone();
        let mut b = oracle.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn builder_rejects_duplicates_and_dangling() {
        let mut b = FinCat::builder();
        b.object("A").object("A");
        assert!(matches!(b.build(), Err(Error::DuplicateName { .. })));
        let mut b = FinCat::builder();
        b.object("A").morphism("f", "A", "Q").auto_identities();
        assert!(matches!(b.build(), Err(Error::DanglingReference { .. })));
        let mut b = FinCat::builder();
        b.object("A");
        assert!(matches!(b.build(), Err(Error::MissingIdentity(_))));
    }

    #[test]
    fn off_domain_entry_is_reported() {
        let mut b = FinCat::builder();
        b.objects(["A", "B"])
            .morphism("f", "A", "B")
            .auto_identities()
            .infer_unit_entries()
            .compose("f", "f", "f");
        let c = b.build().unwrap();
        let report = check_category(&c);
        assert!(report.has_law("composite-off-domain"));
    }
}
