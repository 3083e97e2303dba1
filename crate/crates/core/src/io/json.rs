//! The JSON interchange format: raw serde mirrors of each document kind,
//! lowered to validated models and raised back.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use serde::de::{DeserializeOwned, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Document;
use crate::algebra::{check_action, close_generators, GroupAction, Perm, PermGroup, CLOSURE_BUDGET};
use crate::category::{check_category, CatValuedAction, FinCat, FinFunctor, SetValuedAction};
use crate::error::{Error, Result};
use crate::geometry::{klein_space, GroupoidGeometry, KleinPair};
use crate::hierarchy::{build_hierarchy, inner_completions, HierarchySpec};

/// A JSON object read and written in document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Pairs<V>(pub Vec<(String, V)>);

impl<V> Default for Pairs<V> {
    fn default() -> Self {
        Pairs(Vec::new())
    }
}

impl<V> Pairs<V> {
    fn get(&self, key: &str) -> Option<&V> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl<V: Serialize> Serialize for Pairs<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for Pairs<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct PairsVisitor<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for PairsVisitor<V> {
            type Value = Pairs<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Pairs<V>, A::Error> {
                let mut out: Vec<(String, V)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, V>()? {
                    if out.iter().any(|(seen, _)| *seen == k) {
                        return Err(serde::de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(Pairs(out))
            }
        }
        d.deserialize_map(PairsVisitor(PhantomData))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    #[serde(default)]
    pub identities: Pairs<String>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawGroup {
    pub degree: usize,
    pub generators: Pairs<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawAction {
    pub group: RawGroup,
    pub carrier: Vec<String>,
    pub table: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawSetAction {
    pub base: RawCategory,
    pub fibers: Pairs<Vec<String>>,
    /// Identity morphisms may be left out.
    #[serde(default)]
    pub act: Pairs<Pairs<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawFunctor {
    pub objects: Pairs<String>,
    pub morphisms: Pairs<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawCatAction {
    pub base: RawCategory,
    pub fibers: Pairs<RawCategory>,
    #[serde(default)]
    pub act: Pairs<RawFunctor>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawHierarchy {
    pub outer_base: RawCategory,
    pub inner: Pairs<RawSetAction>,
    #[serde(default)]
    pub outer_act: Pairs<RawFunctor>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawKlein {
    pub group: RawGroup,
    pub subgroup: RawGroup,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawGeometry {
    pub groupoid: RawCategory,
    pub subgroupoid: Vec<String>,
}

pub(crate) const KINDS: [&str; 8] = [
    "category",
    "group",
    "action",
    "set_valued_action",
    "cat_valued_action",
    "hierarchy",
    "klein",
    "groupoid_geometry",
];

fn schema(path: impl Into<String>, message: impl fmt::Display) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

fn join(prefix: &str, rest: &str) -> String {
    if prefix.is_empty() {
        rest.to_string()
    } else if rest.starts_with('[') {
        format!("{prefix}{rest}")
    } else {
        format!("{prefix}.{rest}")
    }
}

/// Name resolution failures inside a lowering become schema errors at
/// `path`; law violations pass through.
fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::DanglingReference { .. }
        | Error::DuplicateName { .. }
        | Error::IncompleteTable(_)
        | Error::MissingIdentity(_)
        | Error::InvalidPerm(_)
        | Error::ClosureBudgetExceeded(_) => schema(path, e),
        other => other,
    }
}

fn typed<T: DeserializeOwned>(value: serde_json::Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { path };
        schema(join(prefix, &path), e.into_inner())
    })
}

/// Reads a JSON document: syntax, then shape, then names, then laws.
pub(crate) fn parse_value(mut value: serde_json::Value) -> Result<Document> {
    let obj = value
        .as_object_mut()
        .ok_or_else(|| schema("", "a document is a JSON object"))?;
    let kind = match obj.remove("kind") {
        Some(serde_json::Value::String(k)) => k,
        Some(_) => return Err(schema("kind", "expected a string")),
        None => return Err(schema("kind", "missing field")),
    };
    match kind.as_str() {
        "category" => Ok(Document::Category(lower_category(&typed(value, "")?, "")?)),
        "group" => Ok(Document::Group(lower_group(&typed(value, "")?, "")?)),
        "action" => Ok(Document::Action(lower_action(&typed(value, "")?, "")?)),
        "set_valued_action" => Ok(Document::SetValuedAction(lower_set_action(&typed(value, "")?, "")?)),
        "cat_valued_action" => Ok(Document::CatValuedAction(lower_cat_action(&typed(value, "")?, "")?)),
        "hierarchy" => Ok(Document::Hierarchy(lower_hierarchy(&typed(value, "")?)?)),
        "klein" => Ok(Document::Klein(lower_klein(&typed(value, "")?)?)),
        "groupoid_geometry" => Ok(Document::GroupoidGeometry(lower_geometry(&typed(value, "")?)?)),
        other => Err(schema(
            "kind",
            format!("unknown kind `{other}`, expected one of {}", KINDS.join(", ")),
        )),
    }
}

pub(crate) fn lower_category(raw: &RawCategory, prefix: &str) -> Result<FinCat> {
    let has_ob = |o: &str| raw.objects.iter().any(|x| x == o);
    let has_mor = |m: &str| raw.morphisms.iter().any(|x| x.name == m);
    for (k, m) in raw.morphisms.iter().enumerate() {
        for (field, o) in [("src", &m.src), ("tgt", &m.tgt)] {
            if !has_ob(o) {
                return Err(schema(
                    join(prefix, &format!("morphisms[{k}].{field}")),
                    format!("unknown object `{o}`"),
                ));
            }
        }
    }
    for (o, m) in &raw.identities.0 {
        let path = join(prefix, &format!("identities.{o}"));
        if !has_ob(o) {
            return Err(schema(path, format!("unknown object `{o}`")));
        }
        if !has_mor(m) {
            return Err(schema(path, format!("unknown morphism `{m}`")));
        }
    }
    for (k, entry) in raw.compose.iter().enumerate() {
        for (i, m) in entry.iter().enumerate() {
            if !has_mor(m) {
                return Err(schema(
                    join(prefix, &format!("compose[{k}][{i}]")),
                    format!("unknown morphism `{m}`"),
                ));
            }
        }
    }
    let mut b = FinCat::builder();
    b.objects(raw.objects.iter().cloned());
    for m in &raw.morphisms {
        b.morphism(&m.name, &m.src, &m.tgt);
    }
    for (o, m) in &raw.identities.0 {
        b.identity(o, m);
    }
    for [g, f, h] in &raw.compose {
        b.compose(g, f, h);
    }
    b.infer_unit_entries();
    let c = b.build().map_err(at(prefix))?;
    let report = check_category(&c);
    if !report.ok {
        return Err(Error::Validation(report));
    }
    Ok(c)
}

pub(crate) fn raise_category(c: &FinCat) -> RawCategory {
    RawCategory {
        objects: c.objects().to_vec(),
        morphisms: c
            .morphisms()
            .iter()
            .map(|m| RawMorphism {
                name: m.name.clone(),
                src: c.ob_name(m.src).to_string(),
                tgt: c.ob_name(m.tgt).to_string(),
            })
            .collect(),
        identities: Pairs(
            (0..c.object_count())
                .map(|x| (c.ob_name(x).to_string(), c.mor_name(c.id(x)).to_string()))
                .collect(),
        ),
        // Entries with an identity factor are inferred on reading.
        compose: c
            .compose_entries()
            .filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f))
            .map(|(g, f, h)| [g, f, h].map(|m| c.mor_name(m).to_string()))
            .collect(),
    }
}

pub(crate) fn lower_group(raw: &RawGroup, prefix: &str) -> Result<PermGroup> {
    let mut gens = Vec::with_capacity(raw.generators.0.len());
    for (name, line) in &raw.generators.0 {
        let path = join(prefix, &format!("generators.{name}"));
        let p = Perm::from_one_line(line).map_err(|e| schema(&path, e))?;
        if p.degree() != raw.degree {
            return Err(schema(path, format!("degree {} differs from {}", p.degree(), raw.degree)));
        }
        gens.push((name.clone(), p));
    }
    close_generators(raw.degree, gens, CLOSURE_BUDGET).map_err(at(&join(prefix, "generators")))
}

pub(crate) fn raise_group(g: &PermGroup) -> RawGroup {
    RawGroup {
        degree: g.degree(),
        generators: Pairs(
            g.generators()
                .iter()
                .map(|(n, p)| (n.clone(), p.one_line()))
                .collect(),
        ),
    }
}

pub(crate) fn lower_action(raw: &RawAction, prefix: &str) -> Result<GroupAction> {
    let group = Arc::new(lower_group(&raw.group, &join(prefix, "group"))?);
    let entries: Vec<(String, String, String)> = raw
        .table
        .iter()
        .map(|[g, x, y]| (g.clone(), x.clone(), y.clone()))
        .collect();
    let a = GroupAction::from_names(group, raw.carrier.clone(), &entries).map_err(at(&join(prefix, "table")))?;
    let report = check_action(&a)?;
    if !report.ok {
        return Err(Error::Validation(report));
    }
    Ok(a)
}

pub(crate) fn raise_action(a: &GroupAction) -> RawAction {
    let g = &a.group;
    RawAction {
        group: raise_group(g),
        carrier: a.carrier.clone(),
        table: (0..g.order())
            .flat_map(|e| {
                (0..a.carrier.len()).map(move |x| {
                    [
                        g.name(e).to_string(),
                        a.carrier[x].clone(),
                        a.carrier[a.act(e, x)].clone(),
                    ]
                })
            })
            .collect(),
    }
}

pub(crate) fn lower_set_action(raw: &RawSetAction, prefix: &str) -> Result<SetValuedAction> {
    let base = Arc::new(lower_category(&raw.base, &join(prefix, "base"))?);
    let fibers: Vec<(String, Vec<String>)> = raw.fibers.0.clone();
    let act_path = join(prefix, "act");
    let mut act: Vec<(String, Vec<(String, String)>)> = Vec::new();
    for (name, pairs) in &raw.act.0 {
        act.push((name.clone(), pairs.0.clone()));
    }
    for x in 0..base.object_count() {
        let id = base.mor_name(base.id(x));
        if raw.act.get(id).is_none() {
            let pts = raw.fibers.get(base.ob_name(x)).cloned().unwrap_or_default();
            act.push((id.to_string(), pts.iter().map(|p| (p.clone(), p.clone())).collect()));
        }
    }
    let a = SetValuedAction::from_names(base, &fibers, &act).map_err(|e| match e {
        Error::DanglingReference { kind: "object", .. } => at(&join(prefix, "fibers"))(e),
        Error::IncompleteTable(ref m) if m.starts_with("no fiber") => at(&join(prefix, "fibers"))(e),
        Error::DuplicateName { .. } => at(&join(prefix, "fibers"))(e),
        other => at(&act_path)(other),
    })?;
    let report = a.check();
    if !report.ok {
        return Err(Error::Validation(report));
    }
    Ok(a)
}

pub(crate) fn raise_set_action(a: &SetValuedAction) -> RawSetAction {
    let b = &*a.base;
    RawSetAction {
        base: raise_category(b),
        fibers: Pairs(
            (0..b.object_count())
                .map(|x| (b.ob_name(x).to_string(), a.fibers[x].clone()))
                .collect(),
        ),
        act: Pairs(
            (0..b.morphism_count())
                .filter(|&f| !b.is_identity(f))
                .map(|f| {
                    let (s, t) = (&a.fibers[b.src(f)], &a.fibers[b.tgt(f)]);
                    let row = s
                        .iter()
                        .enumerate()
                        .map(|(i, p)| (p.clone(), t[a.act[f][i]].clone()))
                        .collect();
                    (b.mor_name(f).to_string(), Pairs(row))
                })
                .collect(),
        ),
    }
}

fn lower_functor(raw: &RawFunctor, dom: &Arc<FinCat>, cod: &Arc<FinCat>, path: &str) -> Result<FinFunctor> {
    FinFunctor::from_names(
        dom.clone(),
        cod.clone(),
        raw.objects.0.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        raw.morphisms.0.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .map_err(at(path))
}

fn raise_functor(f: &FinFunctor) -> RawFunctor {
    RawFunctor {
        objects: Pairs(f.object_pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect()),
        morphisms: Pairs(f.morphism_pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect()),
    }
}

/// Functors per base morphism, identity functors filling in for omitted
/// identity morphisms.
fn lower_functors(
    raw: &Pairs<RawFunctor>,
    base: &FinCat,
    fibers: &[Arc<FinCat>],
    path: &str,
) -> Result<Vec<FinFunctor>> {
    for (name, _) in &raw.0 {
        if base.mor(name).is_none() {
            return Err(schema(join(path, name), format!("unknown morphism `{name}`")));
        }
    }
    (0..base.morphism_count())
        .map(|f| {
            let name = base.mor_name(f);
            let (s, t) = (&fibers[base.src(f)], &fibers[base.tgt(f)]);
            match raw.get(name) {
                Some(r) => lower_functor(r, s, t, &join(path, name)),
                None if base.is_identity(f) => Ok(FinFunctor::identity(s.clone())),
                None => Err(schema(join(path, name), "missing functor")),
            }
        })
        .collect()
}

fn raise_functors(base: &FinCat, act: &[FinFunctor]) -> Pairs<RawFunctor> {
    Pairs(
        (0..base.morphism_count())
            .filter(|&f| !base.is_identity(f))
            .map(|f| (base.mor_name(f).to_string(), raise_functor(&act[f])))
            .collect(),
    )
}

pub(crate) fn lower_cat_action(raw: &RawCatAction, prefix: &str) -> Result<CatValuedAction> {
    let base = Arc::new(lower_category(&raw.base, &join(prefix, "base"))?);
    let fibers_path = join(prefix, "fibers");
    let fibers = (0..base.object_count())
        .map(|x| {
            let name = base.ob_name(x);
            let path = join(&fibers_path, name);
            let raw = raw.fibers.get(name).ok_or_else(|| schema(&path, "missing fiber"))?;
            Ok(Arc::new(lower_category(raw, &path)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let act = lower_functors(&raw.act, &base, &fibers, &join(prefix, "act"))?;
    let a = CatValuedAction { base, fibers, act };
    let report = a.check();
    if !report.ok {
        return Err(Error::Validation(report));
    }
    Ok(a)
}

pub(crate) fn raise_cat_action(a: &CatValuedAction) -> RawCatAction {
    let b = &*a.base;
    RawCatAction {
        base: raise_category(b),
        fibers: Pairs(
            (0..b.object_count())
                .map(|x| (b.ob_name(x).to_string(), raise_category(&a.fibers[x])))
                .collect(),
        ),
        act: raise_functors(b, &a.act),
    }
}

fn lower_hierarchy(raw: &RawHierarchy) -> Result<HierarchySpec> {
    let outer_base = Arc::new(lower_category(&raw.outer_base, "outer_base")?);
    let inner = (0..outer_base.object_count())
        .map(|x| {
            let name = outer_base.ob_name(x);
            let path = join("inner", name);
            let raw = raw.inner.get(name).ok_or_else(|| schema(&path, "missing inner action"))?;
            lower_set_action(raw, &path)
        })
        .collect::<Result<Vec<_>>>()?;
    let totals: Vec<Arc<FinCat>> = inner_completions(&inner, &outer_base)?
        .into_iter()
        .map(|fc| fc.total)
        .collect();
    let outer_act = lower_functors(&raw.outer_act, &outer_base, &totals, "outer_act")?;
    let spec = HierarchySpec {
        outer_base,
        inner,
        outer_act,
    };
    build_hierarchy(&spec)?;
    Ok(spec)
}

fn raise_hierarchy(h: &HierarchySpec) -> RawHierarchy {
    let b = &*h.outer_base;
    RawHierarchy {
        outer_base: raise_category(b),
        inner: Pairs(
            (0..b.object_count())
                .map(|x| (b.ob_name(x).to_string(), raise_set_action(&h.inner[x])))
                .collect(),
        ),
        outer_act: raise_functors(b, &h.outer_act),
    }
}

fn lower_klein(raw: &RawKlein) -> Result<KleinPair> {
    let k = KleinPair {
        group: Arc::new(lower_group(&raw.group, "group")?),
        subgroup: Arc::new(lower_group(&raw.subgroup, "subgroup")?),
    };
    klein_space(&k)?;
    Ok(k)
}

fn lower_geometry(raw: &RawGeometry) -> Result<GroupoidGeometry> {
    let g = Arc::new(lower_category(&raw.groupoid, "groupoid")?);
    let sub = raw
        .subgroupoid
        .iter()
        .enumerate()
        .map(|(k, name)| {
            g.mor(name)
                .ok_or_else(|| schema(format!("subgroupoid[{k}]"), format!("unknown morphism `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupoidGeometry::new(g, sub)
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Tagged {
    Category(RawCategory),
    Group(RawGroup),
    Action(RawAction),
    SetValuedAction(RawSetAction),
    CatValuedAction(RawCatAction),
    Hierarchy(RawHierarchy),
    Klein(RawKlein),
    GroupoidGeometry(RawGeometry),
}

pub(crate) fn raise(doc: &Document) -> serde_json::Value {
    let tagged = match doc {
        Document::Category(c) => Tagged::Category(raise_category(c)),
        Document::Group(g) => Tagged::Group(raise_group(g)),
        Document::Action(a) => Tagged::Action(raise_action(a)),
        Document::SetValuedAction(a) => Tagged::SetValuedAction(raise_set_action(a)),
        Document::CatValuedAction(a) => Tagged::CatValuedAction(raise_cat_action(a)),
        Document::Hierarchy(h) => Tagged::Hierarchy(raise_hierarchy(h)),
        Document::Klein(k) => Tagged::Klein(RawKlein {
            group: raise_group(&k.group),
            subgroup: raise_group(&k.subgroup),
        }),
        Document::GroupoidGeometry(g) => Tagged::GroupoidGeometry(RawGeometry {
            groupoid: raise_category(&g.groupoid),
            subgroupoid: g.sub.iter().map(|&f| g.groupoid.mor_name(f).to_string()).collect(),
        }),
    };
    serde_json::to_value(tagged).expect("plain data serializes")
}
