//! The `fibrato` command line. Exit codes: 0 success, 1 a law or check
//! failed, 2 the input could not be read or parsed.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{group_as_category, standard_group, wreath_product, GroupKind, PermGroup};
use crate::budget::Budget;
use crate::catalog;
use crate::category::{connected_components, find_isomorphism, FinCat};
use crate::error::{Error, Result};
use crate::geometry::{check_groupoid_geometry, check_klein};
use crate::grothendieck::{
    check_split_fibration, check_transformation_equals_completion, grothendieck_complete, transformation_groupoid,
    Action, Variant,
};
use crate::hierarchy::{
    build_hierarchy, check_composite_fibration, classify_base, compare_models, presentation_stats, CodomainKind,
};
use crate::io::{emit_dot, emit_square_dot, parse, to_json, Document, Format};
use crate::report::ValidationReport;
use crate::twogroup::{aut_2group, check_two_group, naturality_square, TwoGroup};

#[derive(Parser, Debug)]
#[command(name = "fibrato", version, about = "Finite base-structured categories, checked by enumeration")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    AbsLeft,
    AbsRight,
    ConLeft,
    ConRight,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::AbsLeft => Variant::AbstractLeft,
            VariantArg::AbsRight => Variant::AbstractRight,
            VariantArg::ConLeft => Variant::ConcreteLeft,
            VariantArg::ConRight => Variant::ConcreteRight,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CodomainArg {
    Set,
    Cat,
    General,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a document.
    Check { file: String },
    /// Grothendieck completion of an action.
    Complete {
        file: String,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Print the total category as a document instead of a summary.
        #[arg(long)]
        emit: bool,
    },
    /// Transformation groupoid X//G of a group action.
    Transform { file: String },
    /// Wreath product of two groups and its block system.
    Wreath {
        /// C<n>, Z<n>, D<n>, S<n> or a group document.
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer: String,
    },
    /// Build a hierarchy and check that the composite is a fibration.
    Hierarchy { file: String },
    /// Wreath-group model against groupoid-hierarchy model.
    CompareModels {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer: String,
    },
    /// Automorphism 2-group of a category.
    Aut2 {
        file: String,
        /// Search node limit; overrides FIBRATO_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Naturality squares of the automorphism 2-group.
    Square {
        file: String,
        /// Index of the 2-cell; with --mor prints that one square.
        #[arg(long, requires = "mor")]
        cell: Option<usize>,
        #[arg(long, requires = "cell")]
        mor: Option<String>,
        /// Emit the chosen square as DOT.
        #[arg(long, requires = "cell")]
        dot: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Klein pair report.
    Klein { file: String },
    /// Groupoid geometry report.
    Geometry { file: String },
    /// Presentation size and base classification.
    Stats {
        file: String,
        #[arg(long, value_enum)]
        codomain: Option<CodomainArg>,
    },
    /// Strict isomorphism search between two categories.
    Iso {
        left: String,
        right: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// DOT rendering of a category.
    Dot {
        file: String,
        #[arg(long)]
        identities: bool,
    },
    /// List the built-in instances or print one as a document.
    Catalog { name: Option<String> },
}

struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome { text, json, ok: true }
    }

    fn checked(text: String, json: Value, report: &ValidationReport) -> Outcome {
        Outcome {
            text: format!("{text}{}", render_report(report)),
            json,
            ok: report.ok,
        }
    }

    /// Raw output that is the same in every format.
    fn verbatim(text: String) -> Outcome {
        Outcome {
            json: Value::Null,
            text,
            ok: true,
        }
    }
}

fn render_report(r: &ValidationReport) -> String {
    if r.ok {
        return "laws: ok\n".into();
    }
    let mut s = format!("laws: {} violation(s)\n", r.violations.len());
    for v in &r.violations {
        writeln!(s, "  {v}").unwrap();
    }
    s
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::Schema { .. }
        | Error::DuplicateName { .. }
        | Error::DanglingReference { .. }
        | Error::MissingIdentity(_)
        | Error::IncompleteTable(_)
        | Error::InvalidPerm(_) => 2,
        _ => 1,
    }
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s)).map(|_| ())
    };
    res.map_err(|e| Error::Syntax {
        line: 0,
        column: 0,
        message: format!("cannot read `{path}`: {e}"),
    })?;
    Ok(s)
}

fn load(path: &str) -> Result<Document> {
    let text = read_input(path)?;
    parse(&text, Format::sniff(&text))
}

fn wrong_kind(doc: &Document, expected: &str) -> Error {
    Error::Schema {
        path: "kind".into(),
        message: format!("expected {expected}, found {}", doc.kind()),
    }
}

fn load_category(path: &str) -> Result<Arc<FinCat>> {
    match load(path)? {
        Document::Category(c) => Ok(Arc::new(c)),
        other => Err(wrong_kind(&other, "a category")),
    }
}

/// `C3`, `Z2`, `D3`, `S4`, or a path to a group document.
fn group_arg(spec: &str) -> Result<Arc<PermGroup>> {
    let kind = match spec.chars().next() {
        Some('C' | 'Z') => Some(GroupKind::Cyclic),
        Some('D') => Some(GroupKind::Dihedral),
        Some('S') => Some(GroupKind::Symmetric),
        _ => None,
    };
    if let (Some(kind), Some(Ok(n))) = (kind, spec.get(1..).map(str::parse::<usize>)) {
        let limit = if matches!(kind, GroupKind::Symmetric) { 7 } else { 64 };
        if n == 0 || n > limit {
            return Err(Error::InvalidPerm(format!("`{spec}`: degree must lie in 1..={limit}")));
        }
        return Ok(Arc::new(standard_group(kind, n)));
    }
    match load(spec)? {
        Document::Group(g) => Ok(Arc::new(g)),
        other => Err(wrong_kind(&other, "a group")),
    }
}

fn budget_with(base: Budget, nodes: Option<u64>) -> Budget {
    nodes.map_or(base, |n| base.with_nodes(n))
}

fn counts(c: &FinCat) -> Value {
    json!({"objects": c.object_count(), "morphisms": c.morphism_count()})
}

fn describe(doc: &Document) -> String {
    match doc {
        Document::Category(c) => format!("{} objects, {} morphisms", c.object_count(), c.morphism_count()),
        Document::Group(g) => format!("order {} on {} points", g.order(), g.degree()),
        Document::Action(a) => format!("group of order {} on {} points", a.group.order(), a.carrier.len()),
        Document::SetValuedAction(a) => format!(
            "base with {} objects, {} points in all",
            a.base.object_count(),
            a.fibers.iter().map(Vec::len).sum::<usize>()
        ),
        Document::CatValuedAction(a) => format!("base with {} objects", a.base.object_count()),
        Document::Hierarchy(h) => format!("outer base with {} objects", h.outer_base.object_count()),
        Document::Klein(k) => format!("group of order {}, subgroup of order {}", k.group.order(), k.subgroup.order()),
        Document::GroupoidGeometry(g) => format!(
            "groupoid with {} morphisms, subgroupoid with {}",
            g.groupoid.morphism_count(),
            g.sub.len()
        ),
    }
}

fn action_of(doc: Document) -> Result<Action> {
    match doc {
        Document::Action(a) => Ok(Action::Set(a.to_set_valued())),
        Document::SetValuedAction(a) => Ok(Action::Set(a)),
        Document::CatValuedAction(a) => Ok(Action::Cat(a)),
        other => Err(wrong_kind(&other, "an action")),
    }
}

fn two_group_summary(t: &TwoGroup) -> (String, Value) {
    let text = format!(
        "{} one-cells, {} two-cells\n",
        t.one_cells.len(),
        t.two_cells.len()
    );
    (
        text,
        json!({"one_cells": t.one_cells.len(), "two_cells": t.two_cells.len()}),
    )
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Check { file } => {
            let doc = load(&file)?;
            let text = format!("ok: {} ({})\n", doc.kind(), describe(&doc));
            Ok(Outcome::ok(text, json!({"ok": true, "kind": doc.kind()})))
        }
        Command::Complete { file, variant, emit } => {
            let variant = Variant::from(variant);
            let fc = grothendieck_complete(&action_of(load(&file)?)?, variant)?;
            if emit {
                return Ok(Outcome::verbatim(to_json(&Document::Category((*fc.total).clone()))));
            }
            let report = check_split_fibration(&fc);
            let text = format!(
                "{variant}: {} objects, {} morphisms\nsplit fibration: {}\n",
                fc.total.object_count(),
                fc.total.morphism_count(),
                if report.ok { "ok" } else { "failed" }
            );
            let json = json!({"variant": variant.label(), "total": counts(&fc.total), "split": report});
            Ok(Outcome::checked(text, json, &report))
        }
        Command::Transform { file } => {
            let a = match load(&file)? {
                Document::Action(a) => a,
                other => return Err(wrong_kind(&other, "an action")),
            };
            let xg = transformation_groupoid(&a);
            let components = connected_components(&xg).len();
            let shape = if components == 1 {
                "connected".to_string()
            } else {
                format!("{components} components")
            };
            let iso = check_transformation_equals_completion(&a)?;
            let text = format!(
                "{} objects, {} morphisms, {shape}\nright completion of the induced action: {}\n",
                xg.object_count(),
                xg.morphism_count(),
                if iso.isomorphic { "isomorphic" } else { "not isomorphic" }
            );
            let json = json!({
                "objects": xg.object_count(),
                "morphisms": xg.morphism_count(),
                "components": components,
                "completion": iso.summary(),
            });
            Ok(Outcome {
                text,
                json,
                ok: iso.isomorphic,
            })
        }
        Command::Wreath { inner, outer } => {
            let (g, p) = (group_arg(&inner)?, group_arg(&outer)?);
            let w = wreath_product(&g, &p)?;
            let preserves = w.group.preserves_partition(&w.blocks);
            let blocks: Vec<String> = w
                .blocks
                .iter()
                .map(|b| {
                    let pts: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
                    format!("{{{}}}", pts.join(","))
                })
                .collect();
            let text = format!(
                "order {} on {} points\nblocks {}: {}\n",
                w.group.order(),
                w.group.degree(),
                blocks.join(" "),
                if preserves { "preserved" } else { "not preserved" }
            );
            let json = json!({
                "order": w.group.order(),
                "degree": w.group.degree(),
                "blocks": w.blocks.iter().map(|b| b.iter().map(|p| p + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "preserves_blocks": preserves,
            });
            Ok(Outcome {
                text,
                json,
                ok: preserves,
            })
        }
        Command::Hierarchy { file } => {
            let spec = match load(&file)? {
                Document::Hierarchy(h) => h,
                other => return Err(wrong_kind(&other, "a hierarchy")),
            };
            let h = build_hierarchy(&spec)?;
            let report = check_composite_fibration(&h.p, h.q());
            let (e, b2) = (h.total(), &h.base_fibration.total);
            let text = format!(
                "total: {} objects, {} morphisms\nintermediate base: {} objects, {} morphisms\ncomposite fibration: {}\n",
                e.object_count(),
                e.morphism_count(),
                b2.object_count(),
                b2.morphism_count(),
                if report.ok { "ok" } else { "failed" }
            );
            let json = json!({"total": counts(e), "intermediate": counts(b2), "composite": report});
            Ok(Outcome::checked(text, json, &report))
        }
        Command::CompareModels { inner, outer } => {
            let (g, p) = (group_arg(&inner)?, group_arg(&outer)?);
            let n = g.degree();
            let blocks: Vec<Vec<String>> = (0..p.degree())
                .map(|b| (1..=n).map(|i| (b * n + i).to_string()).collect())
                .collect();
            let r = compare_models(&blocks, &g, &p)?;
            let iso = match r.isomorphic {
                Some(true) => "isomorphic",
                Some(false) => "not isomorphic",
                None => "undecided",
            };
            let mut text = format!(
                "group model: {} objects, {} morphisms\ngroupoid model: {} objects, {} morphisms\nmorphisms coincide: {}\n{iso}\n",
                r.group_model.objects,
                r.group_model.morphisms,
                r.groupoid_model.objects,
                r.groupoid_model.morphisms,
                if r.morphisms_coincide { "yes" } else { "no" },
            );
            for note in &r.notes {
                writeln!(text, "note: {note}").unwrap();
            }
            Ok(Outcome::ok(text, serde_json::to_value(&r).expect("plain data")))
        }
        Command::Aut2 { file, budget } => {
            let c = load_category(&file)?;
            let t = aut_2group(&c, budget_with(Budget::aut_default(), budget))?;
            let report = check_two_group(&t);
            let (text, mut json) = two_group_summary(&t);
            json["laws"] = serde_json::to_value(&report).expect("plain data");
            Ok(Outcome::checked(text, json, &report))
        }
        Command::Square {
            file,
            cell,
            mor,
            dot,
            budget,
        } => {
            let c = load_category(&file)?;
            let t = aut_2group(&c, budget_with(Budget::aut_default(), budget))?;
            if let (Some(i), Some(name)) = (cell, mor) {
                let chi = t.two_cells.get(i).ok_or_else(|| {
                    Error::dangling("2-cell", &i.to_string(), format!("{} two-cells", t.two_cells.len()))
                })?;
                let f = c.mor(&name).ok_or_else(|| Error::dangling("morphism", &name, "--mor"))?;
                let sq = naturality_square(&t, chi, f);
                if dot {
                    return Ok(Outcome::verbatim(emit_square_dot(&sq)));
                }
                let text = format!(
                    "{}\n{} --{}--> {}\n{} --{}--> {}\nsides {} and {}\n{}\n",
                    sq.cell,
                    sq.corners[0],
                    sq.edges[0],
                    sq.corners[1],
                    sq.corners[2],
                    sq.edges[1],
                    sq.corners[3],
                    sq.edges[2],
                    sq.edges[3],
                    if sq.commutes { "commutes" } else { "does not commute" }
                );
                let ok = sq.commutes;
                return Ok(Outcome {
                    text,
                    json: serde_json::to_value(&sq).expect("plain data"),
                    ok,
                });
            }
            let mut failing = Vec::new();
            let mut total = 0;
            for chi in &t.two_cells {
                for f in 0..c.morphism_count() {
                    total += 1;
                    let sq = naturality_square(&t, chi, f);
                    if !sq.commutes {
                        failing.push(sq);
                    }
                }
            }
            let mut text = format!("{} of {total} squares commute\n", total - failing.len());
            for sq in &failing {
                writeln!(text, "  fails: {} at {}", sq.cell, sq.edges[0]).unwrap();
            }
            Ok(Outcome {
                text,
                json: json!({"squares": total, "commuting": total - failing.len(), "failing": failing}),
                ok: failing.is_empty(),
            })
        }
        Command::Klein { file } => {
            let k = match load(&file)? {
                Document::Klein(k) => k,
                other => return Err(wrong_kind(&other, "a klein pair")),
            };
            let r = check_klein(&k)?;
            let mut text = format!(
                "cosets: {}\ntransitive: {}\nvertex group at eH: order {}, equals H: {}\nX//G: {} objects, {} morphisms\ncompletion of H on X: {} objects, {} morphisms, {} components\niso_probe: {}\n",
                r.cosets,
                r.transitive,
                r.vertex_group_order_at_basepoint,
                r.vertex_group_is_h,
                r.x_mod_g.0,
                r.x_mod_g.1,
                r.completion.0,
                r.completion.1,
                r.completion_components,
                r.isomorphic,
            );
            if let Some(o) = &r.obstruction {
                writeln!(text, "obstruction: {o}").unwrap();
            }
            let mut json = serde_json::to_value(&r).expect("plain data");
            json["iso_probe"] = json!(r.isomorphic);
            let ok = r.transitive && r.vertex_group_is_h;
            Ok(Outcome { text, json, ok })
        }
        Command::Geometry { file } => {
            let gg = match load(&file)? {
                Document::GroupoidGeometry(g) => g,
                other => return Err(wrong_kind(&other, "a groupoid geometry")),
            };
            let r = check_groupoid_geometry(&gg)?;
            let row = &r.row;
            let text = format!(
                "points: {}\nblocks: {:?}\nbasepoints: {}\nstabilizer orders: {:?}\ncompletion: {} objects, {} morphisms\n",
                row.points, row.blocks, row.basepoints, row.stabilizer_orders, row.completion.0, row.completion.1
            );
            Ok(Outcome::checked(text, serde_json::to_value(&r).expect("plain data"), &r.report))
        }
        Command::Stats { file, codomain } => {
            let doc = load(&file)?;
            let (base, default) = match &doc {
                Document::Category(c) => (Arc::new(c.clone()), CodomainKind::General),
                Document::Group(g) => (Arc::new(group_as_category(g)), CodomainKind::General),
                Document::Action(a) => (Arc::new(group_as_category(&a.group)), CodomainKind::Set),
                Document::SetValuedAction(a) => (a.base.clone(), CodomainKind::Set),
                Document::CatValuedAction(a) => (a.base.clone(), CodomainKind::Cat),
                Document::Hierarchy(h) => (h.outer_base.clone(), CodomainKind::Cat),
                Document::GroupoidGeometry(g) => (g.groupoid.clone(), CodomainKind::General),
                other => return Err(wrong_kind(other, "a document with a base category")),
            };
            let codomain = match codomain {
                Some(CodomainArg::Set) => CodomainKind::Set,
                Some(CodomainArg::Cat) => CodomainKind::Cat,
                Some(CodomainArg::General) => CodomainKind::General,
                None => default,
            };
            let s = presentation_stats(&base);
            let class = classify_base(&base, codomain);
            let text = format!(
                "{} objects, {} morphisms, {} composable pairs\nbase: {} ({})\n",
                s.objects, s.morphisms, s.composable_pairs, class.kind, class.label
            );
            Ok(Outcome::ok(text, json!({"stats": s, "class": class})))
        }
        Command::Iso { left, right, budget } => {
            let (c, d) = (load_category(&left)?, load_category(&right)?);
            let found = find_isomorphism(&c, &d, budget_with(Budget::iso_default(), budget))?;
            let text = match &found {
                Some(iso) => {
                    let mut s = String::from("isomorphic\n");
                    for (a, b) in iso.forward.object_pairs() {
                        writeln!(s, "  {a} -> {b}").unwrap();
                    }
                    s
                }
                None => "not isomorphic\n".to_string(),
            };
            let map = found.as_ref().map(|iso| {
                iso.forward
                    .object_pairs()
                    .map(|(a, b)| (a.to_string(), json!(b)))
                    .collect::<serde_json::Map<_, _>>()
            });
            Ok(Outcome::ok(text, json!({"isomorphic": found.is_some(), "objects": map})))
        }
        Command::Dot { file, identities } => {
            let c = load_category(&file)?;
            Ok(Outcome::verbatim(emit_dot(&c, identities)))
        }
        Command::Catalog { name: None } => {
            let mut text = String::new();
            for (name, about, _) in catalog::ENTRIES {
                writeln!(text, "{name:<20} {about}").unwrap();
            }
            let json = catalog::ENTRIES
                .iter()
                .map(|(n, a, _)| json!({"name": n, "about": a}))
                .collect();
            Ok(Outcome::ok(text, Value::Array(json)))
        }
        Command::Catalog { name: Some(name) } => {
            let doc = catalog::lookup(&name).ok_or_else(|| Error::dangling("catalog entry", &name, "catalog"))?;
            Ok(Outcome::verbatim(to_json(&doc)))
        }
    }
}

/// Runs the tool on `args` (including the program name), writing reports
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli.command) {
        Ok(o) => {
            let _ = match (format, o.json.is_null()) {
                (OutputFormat::Json, false) => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap()),
                _ => write!(out, "{}", o.text),
            };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let _ = match (&e, format) {
                (Error::Validation(r), OutputFormat::Text) => {
                    write!(out, "{}: {}", e.name(), render_report(r))
                }
                (Error::Validation(r), OutputFormat::Json) => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": e.name(), "report": r})).unwrap()
                ),
                (_, OutputFormat::Text) => writeln!(err, "error: {e}"),
                (_, OutputFormat::Json) => writeln!(
                    err,
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": e.name(), "message": e.to_string()})).unwrap()
                ),
            };
            code
        }
    }
}
