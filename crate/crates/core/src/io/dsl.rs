//! Line-oriented presentation sugar. Each document lowers to the JSON value
//! the interchange format would hold, so both paths share one validator.
//!
//! ```text
//! kind set_valued_action
//! obj A B
//! mor f: A -> B
//! id A = 1A          # optional, defaults to id_A
//! cmp g.f = h
//! fiber A: x y
//! act f: x -> u
//! ```
//!
//! Groups use `degree n` (optional) and `gen r = (2 3 1)` with one-line
//! images. Actions add `carrier 1 2 3` and either `act g: x -> y` lines or
//! `natural`. Klein pairs name subgroup generators with `sub h = (2 1 3)`;
//! groupoid geometries list subgroupoid morphisms with `sub f g`. Anything
//! after `#` is a comment. Hierarchies and Cat-valued actions are JSON only.

use serde_json::{json, Map, Value};

use crate::algebra::{close_generators, Perm, CLOSURE_BUDGET};
use crate::error::{Error, Result};

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, at: &str, message: impl Into<String>) -> Error {
        // `at` is always a subslice of the line.
        let offset = at.as_ptr() as usize - self.text.as_ptr() as usize;
        Error::Syntax {
            line: self.number,
            column: self.text[..offset].chars().count() + 1,
            message: message.into(),
        }
    }
}

#[derive(Default)]
struct Doc {
    kind: Option<String>,
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    compose: Vec<[String; 3]>,
    degree: Option<usize>,
    generators: Vec<(String, Vec<usize>)>,
    sub_generators: Vec<(String, Vec<usize>)>,
    sub_morphisms: Vec<String>,
    carrier: Option<Vec<String>>,
    natural: bool,
    fibers: Vec<(String, Vec<String>)>,
    act: Vec<(String, String, String)>,
}

/// Splits `s` at the first occurrence of `sep`, trimming both halves.
fn split_once<'a>(line: &Line<'a>, s: &'a str, sep: &str, what: &str) -> Result<(&'a str, &'a str)> {
    s.split_once(sep)
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| line.error(s, format!("expected `{sep}` in {what}")))
}

fn single<'a>(line: &Line<'a>, s: &'a str, what: &str) -> Result<&'a str> {
    let mut words = s.split_whitespace();
    match (words.next(), words.next()) {
        (Some(w), None) => Ok(w),
        (None, _) => Err(line.error(s, format!("missing {what}"))),
        (Some(_), Some(extra)) => Err(line.error(extra, format!("unexpected token after {what}"))),
    }
}

fn one_line<'a>(line: &Line<'a>, s: &'a str) -> Result<Vec<usize>> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| line.error(s, "expected a parenthesised image list like (2 3 1)"))?;
    inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| w.parse().map_err(|_| line.error(w, format!("`{w}` is not a point"))))
        .collect()
}

fn arrow<'a>(line: &Line<'a>, rest: &'a str, what: &str) -> Result<(&'a str, &'a str, &'a str)> {
    let (name, ends) = split_once(line, rest, ":", what)?;
    let (src, tgt) = split_once(line, ends, "->", what)?;
    Ok((single(line, name, "name")?, single(line, src, "source")?, single(line, tgt, "target")?))
}

fn directive(doc: &mut Doc, line: &Line<'_>, keyword: &str, rest: &str) -> Result<()> {
    match keyword {
        "kind" => doc.kind = Some(single(line, rest, "kind")?.to_string()),
        "obj" => doc.objects.extend(rest.split_whitespace().map(String::from)),
        "mor" => {
            let (f, s, t) = arrow(line, rest, "morphism")?;
            doc.morphisms.push((f.into(), s.into(), t.into()));
        }
        "id" => {
            let (o, f) = split_once(line, rest, "=", "identity")?;
            doc.identities.push((single(line, o, "object")?.into(), single(line, f, "morphism")?.into()));
        }
        "cmp" => {
            let (lhs, h) = split_once(line, rest, "=", "composite")?;
            let (g, f) = split_once(line, lhs, ".", "composite")?;
            doc.compose.push([
                single(line, g, "morphism")?.into(),
                single(line, f, "morphism")?.into(),
                single(line, h, "morphism")?.into(),
            ]);
        }
        "degree" => {
            let w = single(line, rest, "degree")?;
            doc.degree = Some(w.parse().map_err(|_| line.error(w, "degree must be a count"))?);
        }
        "gen" | "sub" if rest.contains('=') => {
            let (name, images) = split_once(line, rest, "=", "generator")?;
            let g = (single(line, name, "generator name")?.to_string(), one_line(line, images)?);
            if keyword == "gen" {
                doc.generators.push(g);
            } else {
                doc.sub_generators.push(g);
            }
        }
        "sub" => doc.sub_morphisms.extend(rest.split_whitespace().map(String::from)),
        "carrier" => doc.carrier = Some(rest.split_whitespace().map(String::from).collect()),
        "natural" => {
            if !rest.is_empty() {
                return Err(line.error(rest, "`natural` takes no arguments"));
            }
            doc.natural = true;
        }
        "fiber" => {
            let (o, pts) = split_once(line, rest, ":", "fiber")?;
            let pts = pts.split_whitespace().map(String::from).collect();
            doc.fibers.push((single(line, o, "object")?.into(), pts));
        }
        "act" => {
            let (g, x, y) = arrow(line, rest, "action entry")?;
            doc.act.push((g.into(), x.into(), y.into()));
        }
        _ => return Err(line.error(keyword, format!("unknown directive `{keyword}`"))),
    }
    Ok(())
}

pub(crate) fn lower(input: &str) -> Result<Value> {
    let mut doc = Doc::default();
    let mut last = 0;
    for (i, raw) in input.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let line = Line { number: i + 1, text: raw };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        last = i + 1;
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        directive(&mut doc, &line, keyword, rest.trim())?;
    }
    let kind = doc.kind.clone().unwrap_or_else(|| "category".to_string());
    let eof = |message: String| Error::Syntax {
        line: last.max(1),
        column: 1,
        message,
    };
    let body = match kind.as_str() {
        "category" => category(&doc),
        "group" => group(&doc.generators, doc.degree),
        "action" => action(&doc).map_err(eof)?,
        "set_valued_action" => json!({
            "base": category(&doc),
            "fibers": pairs(doc.fibers.iter().map(|(o, p)| (o.clone(), json!(p)))),
            "act": nested(&doc.act),
        }),
        "klein" => json!({
            "group": group(&doc.generators, doc.degree),
            "subgroup": group(&doc.sub_generators, doc.degree),
        }),
        "groupoid_geometry" => json!({
            "groupoid": category(&doc),
            "subgroupoid": doc.sub_morphisms,
        }),
        other => return Err(eof(format!("kind `{other}` has no DSL form"))),
    };
    let mut out = Map::new();
    out.insert("kind".into(), Value::String(kind));
    if let Value::Object(fields) = body {
        out.extend(fields);
    }
    Ok(Value::Object(out))
}

fn pairs(items: impl IntoIterator<Item = (String, Value)>) -> Value {
    Value::Object(items.into_iter().collect())
}

/// `act` lines grouped by their first column, in order of appearance.
fn nested(entries: &[(String, String, String)]) -> Value {
    let mut out = Map::new();
    for (f, x, y) in entries {
        let row = out.entry(f.clone()).or_insert_with(|| Value::Object(Map::new()));
        row.as_object_mut()
            .expect("rows are objects")
            .insert(x.clone(), Value::String(y.clone()));
    }
    Value::Object(out)
}

/// Objects without an `id` line get a fresh `id_X`.
fn category(doc: &Doc) -> Value {
    let mut morphisms: Vec<Value> = doc
        .morphisms
        .iter()
        .map(|(f, s, t)| json!({"name": f, "src": s, "tgt": t}))
        .collect();
    let mut identities = Map::new();
    for o in &doc.objects {
        let declared = doc.identities.iter().find(|(x, _)| x == o).map(|(_, f)| f.clone());
        let f = declared.unwrap_or_else(|| {
            let f = format!("id_{o}");
            morphisms.push(json!({"name": f, "src": o, "tgt": o}));
            f
        });
        identities.insert(o.clone(), Value::String(f));
    }
    // Lines naming an undeclared object still reach the schema check.
    for (o, f) in &doc.identities {
        identities.entry(o.clone()).or_insert_with(|| Value::String(f.clone()));
    }
    json!({
        "objects": doc.objects,
        "morphisms": morphisms,
        "identities": identities,
        "compose": doc.compose,
    })
}

fn group(generators: &[(String, Vec<usize>)], degree: Option<usize>) -> Value {
    let degree = degree.unwrap_or_else(|| generators.first().map_or(0, |(_, l)| l.len()));
    json!({
        "degree": degree,
        "generators": pairs(generators.iter().map(|(n, l)| (n.clone(), json!(l)))),
    })
}

/// `natural` expands to the full table on points `1..=degree`, naming
/// elements exactly as the JSON reader will.
fn action(doc: &Doc) -> std::result::Result<Value, String> {
    let group_value = group(&doc.generators, doc.degree);
    if !doc.natural {
        let carrier = doc.carrier.clone().ok_or("an action needs a `carrier` line")?;
        let table: Vec<[&String; 3]> = doc.act.iter().map(|(g, x, y)| [g, x, y]).collect();
        return Ok(json!({"group": group_value, "carrier": carrier, "table": table}));
    }
    let degree = group_value["degree"].as_u64().unwrap_or(0) as usize;
    let gens = doc
        .generators
        .iter()
        .map(|(n, l)| Perm::from_one_line(l).map(|p| (n.clone(), p)))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let g = close_generators(degree, gens, CLOSURE_BUDGET).map_err(|e| e.to_string())?;
    let points: Vec<String> = (1..=degree).map(|i| i.to_string()).collect();
    if doc.carrier.as_ref().is_some_and(|c| *c != points) {
        return Err("`natural` acts on the points 1..degree".into());
    }
    let table: Vec<[String; 3]> = (0..g.order())
        .flat_map(|e| {
            let p = g.element(e).clone();
            let name = g.name(e).to_string();
            (0..degree).map(move |x| [name.clone(), (x + 1).to_string(), (p.apply(x) + 1).to_string()])
        })
        .collect();
    Ok(json!({"group": group_value, "carrier": points, "table": table}))
}
