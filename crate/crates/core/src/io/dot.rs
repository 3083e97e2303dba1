use std::fmt::Write;

use crate::category::FinCat;
use crate::twogroup::NaturalitySquare;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A DOT digraph with one node per object and one edge per morphism, both
/// sorted by name. Identities are left out unless asked for.
pub fn emit_dot(c: &FinCat, identities: bool) -> String {
    let mut nodes: Vec<&str> = c.objects().iter().map(String::as_str).collect();
    nodes.sort_unstable();
    let mut edges: Vec<(&str, &str, &str)> = c
        .morphisms()
        .iter()
        .enumerate()
        .filter(|&(f, _)| identities || !c.is_identity(f))
        .map(|(_, m)| (m.name.as_str(), c.ob_name(m.src), c.ob_name(m.tgt)))
        .collect();
    edges.sort_unstable();
    let mut out = String::from("digraph C {\n");
    for n in nodes {
        writeln!(out, "  {};", quote(n)).unwrap();
    }
    for (name, s, t) in edges {
        writeln!(out, "  {} -> {} [label={}];", quote(s), quote(t), quote(name)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The square laid out on a 2×2 grid: `γ(f)` along the top, `γ'(f)` along
/// the bottom, the components down the sides.
pub fn emit_square_dot(sq: &NaturalitySquare) -> String {
    let [gx, gy, hx, hy] = &sq.corners;
    let [top, bottom, left, right] = &sq.edges;
    let verdict = if sq.commutes { "commutes" } else { "does not commute" };
    let mut out = String::from("digraph square {\n  rankdir=LR;\n");
    writeln!(out, "  label={};", quote(&format!("{}: {verdict}", sq.cell))).unwrap();
    for (id, label) in [("tl", gx), ("tr", gy), ("bl", hx), ("br", hy)] {
        writeln!(out, "  {id} [label={}];", quote(label)).unwrap();
    }
    for (s, t, label) in [("tl", "tr", top), ("bl", "br", bottom), ("tl", "bl", left), ("tr", "br", right)] {
        writeln!(out, "  {s} -> {t} [label={}];", quote(label)).unwrap();
    }
    out.push_str("  { rank=same; tl; bl; }\n  { rank=same; tr; br; }\n}\n");
    out
}
