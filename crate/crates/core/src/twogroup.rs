//! Strict automorphism 2-groups of finite categories and their naturality
//! squares: inside a fiber, embedded at a node of a total, and on a total.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::category::{all_isomorphisms, inverse_of, FinCat, FinFunctor, Mor, Ob};
use crate::error::{Error, Result};
use crate::grothendieck::FibredCategory;
use crate::report::ValidationReport;

/// A natural isomorphism `one_cells[from] ⇒ one_cells[to]`; `components[x]`
/// runs from `from(x)` to `to(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoCell {
    pub from: usize,
    pub to: usize,
    pub components: Vec<Mor>,
}

/// Automorphisms of `base` (or a subgroup of them) and the natural
/// isomorphisms between them, with both compositions tabulated.
#[derive(Debug, Clone)]
pub struct TwoGroup {
    pub base: Arc<FinCat>,
    pub one_cells: Vec<FinFunctor>,
    pub identity: usize,
    /// `compose[a * k + b]` is `one_cells[a] ∘ one_cells[b]`.
    pub compose: Vec<usize>,
    pub inverse: Vec<usize>,
    /// Sorted by `(from, to)`, then by components.
    pub two_cells: Vec<TwoCell>,
    /// `(ψ, χ) ↦ ψ·χ` for `χ.to == ψ.from`.
    pub vertical: HashMap<(usize, usize), usize>,
    /// `horizontal[ψ * n + χ]` is `ψ ∗ χ`.
    pub horizontal: Vec<usize>,
}

impl TwoGroup {
    pub fn one_cell_name(&self, a: usize) -> String {
        if a == self.identity {
            "id".into()
        } else {
            format!("γ{a}")
        }
    }

    pub fn two_cell_name(&self, c: usize) -> String {
        format!("χ{c}")
    }

    /// 2-cells from `one_cells[a]` to `one_cells[b]`.
    pub fn between(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.two_cells
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.from == a && c.to == b)
            .map(|(i, _)| i)
    }

    /// The identity 2-cell on `one_cells[a]`.
    pub fn identity_cell(&self, a: usize) -> usize {
        let comps: Vec<Mor> = self.one_cells[a].obj.iter().map(|&y| self.base.id(y)).collect();
        self.between(a, a)
            .find(|&c| self.two_cells[c].components == comps)
            .expect("identity cells are natural")
    }
}

/// Pointwise `γ'(f) ∘ χ_x == χ_y ∘ γ(f)` for every morphism `f: x → y`.
fn is_natural(c: &FinCat, g: &FinFunctor, h: &FinFunctor, comps: &[Mor]) -> bool {
    (0..c.morphism_count()).all(|f| naturality_holds(c, g, h, comps, f))
}

fn naturality_holds(c: &FinCat, g: &FinFunctor, h: &FinFunctor, comps: &[Mor], f: Mor) -> bool {
    let (x, y) = (c.src(f), c.tgt(f));
    let lhs = c.compose(h.mor[f], comps[x]);
    lhs.is_some() && lhs == c.compose(comps[y], g.mor[f])
}

/// All natural isomorphisms `g ⇒ h`, choosing components object by object
/// and checking each morphism once both its endpoints have components.
fn natural_isos(c: &FinCat, g: &FinFunctor, h: &FinFunctor, meter: &mut Meter) -> Result<Vec<Vec<Mor>>> {
    let n = c.object_count();
    let candidates: Vec<Vec<Mor>> = (0..n)
        .map(|x| {
            c.hom(g.obj[x], h.obj[x])
                .iter()
                .copied()
                .filter(|&m| inverse_of(c, m).is_some())
                .collect()
        })
        .collect();
    // Morphisms whose later endpoint is x are checked when x is assigned.
    let mut due: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for f in 0..c.morphism_count() {
        due[c.src(f).max(c.tgt(f))].push(f);
    }
    let mut out = Vec::new();
    let mut comps = vec![0; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        x: Ob,
        c: &FinCat,
        g: &FinFunctor,
        h: &FinFunctor,
        candidates: &[Vec<Mor>],
        due: &[Vec<Mor>],
        comps: &mut Vec<Mor>,
        out: &mut Vec<Vec<Mor>>,
        meter: &mut Meter,
    ) -> Result<()> {
        if x == comps.len() {
            out.push(comps.clone());
            return Ok(());
        }
        for &m in &candidates[x] {
            meter.tick()?;
            comps[x] = m;
            if due[x].iter().all(|&f| naturality_holds(c, g, h, comps, f)) {
                go(x + 1, c, g, h, candidates, due, comps, out, meter)?;
            }
        }
        Ok(())
    }
    go(0, c, g, h, &candidates, &due, &mut comps, &mut out, meter)?;
    Ok(out)
}

/// The full automorphism 2-group of `c`.
///
/// Fails with `BudgetExceeded` if `c` is over the size caps of `budget` or
/// either search runs out of nodes.
pub fn aut_2group(c: &Arc<FinCat>, budget: Budget) -> Result<TwoGroup> {
    if !budget.admits(c.object_count(), c.morphism_count()) {
        return Err(Error::BudgetExceeded {
            nodes: 0,
            limit: budget.nodes,
        });
    }
    let one_cells = all_isomorphisms(c, c, &[], budget)?;
    assemble(c, one_cells, budget)
}

/// The sub-2-group on the automorphisms generated by `generators`, with all
/// natural isomorphisms between them. No size caps apply; only the node
/// budget bounds the 2-cell search.
pub fn sub_2group(c: &Arc<FinCat>, generators: &[FinFunctor], budget: Budget) -> Result<TwoGroup> {
    let mut cells = vec![FinFunctor::identity(c.clone())];
    let mut seen: HashMap<(Vec<Ob>, Vec<Mor>), usize> = HashMap::new();
    seen.insert((cells[0].obj.clone(), cells[0].mor.clone()), 0);
    let mut i = 0;
    while i < cells.len() {
        for gen in generators {
            if *gen.dom != **c || *gen.cod != **c {
                return Err(Error::DomainMismatch("generators must be endofunctors".into()));
            }
            let next = gen.after(&cells[i]);
            let key = (next.obj.clone(), next.mor.clone());
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(cells.len());
                cells.push(next);
            }
        }
        i += 1;
    }
    assemble(c, cells, budget)
}

fn assemble(c: &Arc<FinCat>, one_cells: Vec<FinFunctor>, budget: Budget) -> Result<TwoGroup> {
    let k = one_cells.len();
    let index: HashMap<(&[Ob], &[Mor]), usize> = one_cells
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.obj.as_slice(), f.mor.as_slice()), i))
        .collect();
    let lookup = |f: &FinFunctor| index.get(&(f.obj.as_slice(), f.mor.as_slice())).copied();
    let identity = lookup(&FinFunctor::identity(c.clone()))
        .ok_or_else(|| Error::DomainMismatch("the identity is not among the 1-cells".into()))?;
    let mut compose = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let ab = one_cells[a].after(&one_cells[b]);
            compose.push(lookup(&ab).ok_or_else(|| {
                Error::DomainMismatch("1-cells are not closed under composition".into())
            })?);
        }
    }
    let inverse = (0..k)
        .map(|a| {
            (0..k)
                .find(|&b| compose[a * k + b] == identity)
                .ok_or_else(|| Error::DomainMismatch("a 1-cell has no inverse among the 1-cells".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut meter = Meter::new(budget.nodes);
    let mut two_cells = Vec::new();
    for from in 0..k {
        for to in 0..k {
            for components in natural_isos(c, &one_cells[from], &one_cells[to], &mut meter)? {
                two_cells.push(TwoCell { from, to, components });
            }
        }
    }
    let cell_index: HashMap<TwoCell, usize> = two_cells.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let find = |t: TwoCell| cell_index.get(&t).copied().expect("composites of natural isos are natural");

    let mut vertical = HashMap::new();
    for (p, psi) in two_cells.iter().enumerate() {
        for (q, chi) in two_cells.iter().enumerate().filter(|(_, chi)| chi.to == psi.from) {
            let components = psi
                .components
                .iter()
                .zip(&chi.components)
                .map(|(&a, &b)| c.comp(a, b))
                .collect();
            vertical.insert((p, q), find(TwoCell { from: chi.from, to: psi.to, components }));
        }
    }
    let n = two_cells.len();
    let mut horizontal = Vec::with_capacity(n * n);
    for psi in &two_cells {
        for chi in &two_cells {
            horizontal.push(find(horizontal_cell(c, &one_cells, &compose, psi, chi)));
        }
    }
    Ok(TwoGroup {
        base: c.clone(),
        one_cells,
        identity,
        compose,
        inverse,
        two_cells,
        vertical,
        horizontal,
    })
}

/// `(ψ ∗ χ)_x = ψ_{γ₂' x} ∘ γ₁(χ_x)` for `ψ: γ₁ ⇒ γ₁'` and `χ: γ₂ ⇒ γ₂'`.
fn horizontal_cell(c: &FinCat, one: &[FinFunctor], compose: &[usize], psi: &TwoCell, chi: &TwoCell) -> TwoCell {
    let k = one.len();
    let (g1, g2p) = (&one[psi.from], &one[chi.to]);
    let components = (0..c.object_count())
        .map(|x| c.comp(psi.components[g2p.obj[x]], g1.mor[chi.components[x]]))
        .collect();
    TwoCell {
        from: compose[psi.from * k + chi.from],
        to: compose[psi.to * k + chi.to],
        components,
    }
}

/// Re-verifies the 2-group: closure and inverses of 1-cells, naturality
/// and invertibility of 2-cells, and interchange on every composable
/// quadruple.
///
/// Law names: `one-cell-closure`, `one-cell-inverse`, `naturality`,
/// `invertible`, `interchange`.
pub fn check_two_group(t: &TwoGroup) -> ValidationReport {
    let c = &*t.base;
    let k = t.one_cells.len();
    let mut report = ValidationReport::new();
    for a in 0..k {
        for b in 0..k {
            let ab = t.one_cells[a].after(&t.one_cells[b]);
            let want = &t.one_cells[t.compose[a * k + b]];
            if ab.obj != want.obj || ab.mor != want.mor {
                report.push("one-cell-closure", [t.one_cell_name(a), t.one_cell_name(b)]);
            }
        }
        if t.compose[a * k + t.inverse[a]] != t.identity || t.compose[t.inverse[a] * k + a] != t.identity {
            report.push("one-cell-inverse", [t.one_cell_name(a)]);
        }
    }
    for (i, cell) in t.two_cells.iter().enumerate() {
        if !is_natural(c, &t.one_cells[cell.from], &t.one_cells[cell.to], &cell.components) {
            report.push("naturality", [t.two_cell_name(i)]);
        }
        if cell.components.iter().any(|&m| inverse_of(c, m).is_none()) {
            report.push("invertible", [t.two_cell_name(i)]);
        }
    }
    let n = t.two_cells.len();
    let composable: Vec<(usize, usize)> = t.vertical.keys().copied().collect();
    for &(psi2, psi1) in &composable {
        for &(chi2, chi1) in &composable {
            let lhs = t.horizontal[t.vertical[&(psi2, psi1)] * n + t.vertical[&(chi2, chi1)]];
            let top = t.horizontal[psi2 * n + chi2];
            let bottom = t.horizontal[psi1 * n + chi1];
            if t.vertical.get(&(top, bottom)) != Some(&lhs) {
                report.push(
                    "interchange",
                    [psi2, psi1, chi2, chi1].map(|x| t.two_cell_name(x)),
                );
            }
        }
    }
    report
}

/// The square `γ(f)`, `γ'(f)`, `χ_x`, `χ_y` over `f: x → y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaturalitySquare {
    /// `γx`, `γy`, `γ'x`, `γ'y`.
    pub corners: [String; 4],
    /// `γ(f)`, `γ'(f)`, `χ_x`, `χ_y`.
    pub edges: [String; 4],
    pub cell: String,
    pub commutes: bool,
}

impl NaturalitySquare {
    /// Whether `γ'(f) ∘ χ_x = χ_y ∘ γ(f)` holds in `c`, with all names
    /// resolved there.
    fn decide(c: &FinCat, edges: &[String; 4]) -> bool {
        let [top, bottom, left, right] = edges.clone().map(|e| c.mor(&e));
        match (top, bottom, left, right) {
            (Some(t), Some(b), Some(l), Some(r)) => {
                let lhs = c.compose(b, l);
                lhs.is_some() && lhs == c.compose(r, t)
            }
            _ => false,
        }
    }
}

/// The naturality square of `chi` at `f`. The cell need not come from `t`;
/// a hand-built one is judged on its components.
pub fn naturality_square(t: &TwoGroup, chi: &TwoCell, f: Mor) -> NaturalitySquare {
    let c = &*t.base;
    let (g, h) = (&t.one_cells[chi.from], &t.one_cells[chi.to]);
    let (x, y) = (c.src(f), c.tgt(f));
    let corners = [g.obj[x], g.obj[y], h.obj[x], h.obj[y]].map(|o| c.ob_name(o).to_string());
    let edges = [g.mor[f], h.mor[f], chi.components[x], chi.components[y]].map(|m| c.mor_name(m).to_string());
    let label = t
        .two_cells
        .iter()
        .position(|known| known == chi)
        .map_or_else(|| "χ".to_string(), |i| t.two_cell_name(i));
    NaturalitySquare {
        commutes: naturality_holds(c, g, h, &chi.components, f),
        cell: format!("{label}: {} ⇒ {}", t.one_cell_name(chi.from), t.one_cell_name(chi.to)),
        corners,
        edges,
    }
}

/// Prefixes a square living in the fiber over `node` into the total:
/// objects become `(node,x)` and morphisms `(id_node,f)`. The flag is
/// recomputed in the total.
pub fn embed_square_at_node(sq: &NaturalitySquare, total: &FibredCategory, node: Ob) -> Result<NaturalitySquare> {
    let (e, b) = (&*total.total, &*total.base);
    let star = b.ob_name(node);
    let id = b.mor_name(b.id(node));
    let mismatch = |what: &str| Error::FiberMismatch(format!("`{what}` is not in the fiber over `{star}`"));
    let corners = sq.corners.clone().map(|x| format!("({star},{x})"));
    for o in &corners {
        match e.ob(o) {
            Some(i) if total.projection.obj[i] == node => {}
            _ => return Err(mismatch(o)),
        }
    }
    let edges = sq.edges.clone().map(|f| format!("({id},{f})"));
    for m in &edges {
        match e.mor(m) {
            Some(i) if total.projection.mor[i] == b.id(node) => {}
            _ => return Err(mismatch(m)),
        }
    }
    Ok(NaturalitySquare {
        commutes: NaturalitySquare::decide(e, &edges),
        cell: format!("({id},{})", sq.cell),
        corners,
        edges,
    })
}

/// The square of an outer 2-cell at a morphism of a hierarchy total.
pub fn outer_square(t_outer: &TwoGroup, chi: &TwoCell, m: Mor) -> NaturalitySquare {
    naturality_square(t_outer, chi, m)
}
