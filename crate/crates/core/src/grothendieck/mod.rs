//! Grothendieck completions of set- and category-valued actions, their
//! projections and cleavages, and transformation groupoids.
//!
//! One engine builds all four variants. Left variants complete a covariant
//! action on the base; right variants complete a contravariant one, given as
//! a covariant action on the opposite of the base, so the completion sits
//! over `opposite(action.base)`.

mod cartesian;
mod transform;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::category::{opposite, CatValuedAction, FinCat, FinFunctor, Mor, Morphism, Ob, SetValuedAction};
use crate::error::{Error, Result};

pub use cartesian::{check_split_fibration, is_cartesian, is_cartesian_wrt, is_opcartesian_wrt};
pub use transform::{check_transformation_equals_completion, transformation_groupoid, IsoReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    AbstractLeft,
    AbstractRight,
    ConcreteLeft,
    ConcreteRight,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::AbstractLeft,
        Variant::AbstractRight,
        Variant::ConcreteLeft,
        Variant::ConcreteRight,
    ];

    pub fn is_left(self) -> bool {
        matches!(self, Variant::AbstractLeft | Variant::ConcreteLeft)
    }

    pub fn is_concrete(self) -> bool {
        matches!(self, Variant::ConcreteLeft | Variant::ConcreteRight)
    }

    /// Command-line spelling.
    pub fn label(self) -> &'static str {
        match self {
            Variant::AbstractLeft => "abs-left",
            Variant::AbstractRight => "abs-right",
            Variant::ConcreteLeft => "con-left",
            Variant::ConcreteRight => "con-right",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.label() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Input to a completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Set(SetValuedAction),
    Cat(CatValuedAction),
}

impl Action {
    pub fn base(&self) -> &Arc<FinCat> {
        match self {
            Action::Set(a) => &a.base,
            Action::Cat(a) => &a.base,
        }
    }
}

impl From<SetValuedAction> for Action {
    fn from(a: SetValuedAction) -> Self {
        Action::Set(a)
    }
}

impl From<CatValuedAction> for Action {
    fn from(a: CatValuedAction) -> Self {
        Action::Cat(a)
    }
}

/// A completion: total category, base, projection and chosen lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibredCategory {
    pub total: Arc<FinCat>,
    pub base: Arc<FinCat>,
    pub projection: FinFunctor,
    /// `cleavage[f][i]`: the chosen lift of base morphism `f` at the `i`-th
    /// object of the fiber over `src f` (left variants) or `tgt f` (right).
    pub cleavage: Vec<Vec<Mor>>,
    /// Total objects over each base object, in fiber order.
    pub fibers: Vec<Vec<Ob>>,
    /// The fiber morphism `φ` carried by each total morphism. For concrete
    /// variants it is the identity of a point of the discrete fiber.
    pub components: Vec<Mor>,
    pub variant: Variant,
}

impl FibredCategory {
    /// The base object whose fiber indexes the lifts of `f`.
    pub fn lift_anchor(&self, f: Mor) -> Ob {
        if self.variant.is_left() {
            self.base.src(f)
        } else {
            self.base.tgt(f)
        }
    }

    pub fn is_cartesian(&self, m: Mor) -> bool {
        is_cartesian(self, m)
    }
}

/// Structure of one total morphism: base morphism, endpoints in the fibers,
/// and the fiber morphism component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Cell {
    f: Mor,
    a: Ob,
    b: Ob,
    phi: Mor,
}

/// Builds the completion of `action` in the given variant.
///
/// Set-valued actions enter abstract variants through their discrete
/// inclusion; concrete variants require a set-valued action.
pub fn grothendieck_complete(action: &Action, variant: Variant) -> Result<FibredCategory> {
    let (cat_action, points) = match action {
        Action::Set(a) => {
            a.validate()?;
            (a.to_cat_valued(), Some(&a.fibers))
        }
        Action::Cat(a) => {
            if variant.is_concrete() {
                return Err(Error::VariantMismatch(format!(
                    "{variant} needs a set-valued action"
                )));
            }
            a.validate()?;
            (a.clone(), None)
        }
    };
    let points = if variant.is_concrete() { points } else { None };
    Ok(complete_cat(&cat_action, variant, points))
}

fn complete_cat(
    action: &CatValuedAction,
    variant: Variant,
    points: Option<&Vec<Vec<String>>>,
) -> FibredCategory {
    let left = variant.is_left();
    let base: Arc<FinCat> = if left {
        action.base.clone()
    } else {
        Arc::new(opposite(&action.base))
    };
    let b = &*base;
    let fib = &action.fibers;

    let mut objects = Vec::new();
    let mut fibers = Vec::with_capacity(b.object_count());
    let mut offset = Vec::with_capacity(b.object_count());
    for x in 0..b.object_count() {
        offset.push(objects.len());
        let mut over = Vec::new();
        for a in 0..fib[x].object_count() {
            over.push(objects.len());
            let label = match points {
                Some(p) => p[x][a].clone(),
                None => fib[x].ob_name(a).to_string(),
            };
            objects.push(format!("({},{label})", b.ob_name(x)));
        }
        fibers.push(over);
    }

    // Left: (f, a, φ) with φ: F f(a) → b in the fiber over tgt f.
    // Right: (f, φ, b) with φ: a → F̄ f(b) in the fiber over src f; the
    // action functor of f runs from the fiber over tgt f to that over src f.
    let mut cells = Vec::new();
    for f in 0..b.morphism_count() {
        let (x, y) = (b.src(f), b.tgt(f));
        let act = &action.act[f];
        if left {
            for a in 0..fib[x].object_count() {
                let fa = act.obj[a];
                for bb in 0..fib[y].object_count() {
                    for &phi in fib[y].hom(fa, bb) {
                        cells.push(Cell { f, a, b: bb, phi });
                    }
                }
            }
        } else {
            for bb in 0..fib[y].object_count() {
                let fb = act.obj[bb];
                for a in 0..fib[x].object_count() {
                    for &phi in fib[x].hom(a, fb) {
                        cells.push(Cell { f, a, b: bb, phi });
                    }
                }
            }
        }
    }
    let index: HashMap<Cell, Mor> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();

    let names = name_cells(b, fib, &cells, left, points);
    let morphisms: Vec<Morphism> = cells
        .iter()
        .zip(names)
        .map(|(c, name)| Morphism {
            name,
            src: offset[b.src(c.f)] + c.a,
            tgt: offset[b.tgt(c.f)] + c.b,
        })
        .collect();

    let m = cells.len();
    let mut table = vec![None; m * m];
    // Hom lists of the total, so only composable pairs are visited.
    let n_tot = objects.len();
    let mut out_of: Vec<Vec<Mor>> = vec![Vec::new(); n_tot];
    for (i, mo) in morphisms.iter().enumerate() {
        out_of[mo.src].push(i);
    }
    for (i, c1) in cells.iter().enumerate() {
        for &j in &out_of[morphisms[i].tgt] {
            let c2 = &cells[j];
            let gf = b.comp(c2.f, c1.f);
            let phi = if left {
                // ψ ∘ F g(φ)
                let moved = action.act[c2.f].mor[c1.phi];
                fib[b.tgt(c2.f)].comp(c2.phi, moved)
            } else {
                // F̄ f(ψ) ∘ φ
                let moved = action.act[c1.f].mor[c2.phi];
                fib[b.src(c1.f)].comp(moved, c1.phi)
            };
            let key = Cell {
                f: gf,
                a: c1.a,
                b: c2.b,
                phi,
            };
            table[j * m + i] = Some(index[&key]);
        }
    }

    let mut identity = vec![0; n_tot];
    for x in 0..b.object_count() {
        for a in 0..fib[x].object_count() {
            let key = Cell {
                f: b.id(x),
                a,
                b: a,
                phi: fib[x].id(a),
            };
            identity[offset[x] + a] = index[&key];
        }
    }

    let mut cleavage = Vec::with_capacity(b.morphism_count());
    for f in 0..b.morphism_count() {
        let (x, y) = (b.src(f), b.tgt(f));
        let act = &action.act[f];
        let row = if left {
            (0..fib[x].object_count())
                .map(|a| {
                    let fa = act.obj[a];
                    index[&Cell {
                        f,
                        a,
                        b: fa,
                        phi: fib[y].id(fa),
                    }]
                })
                .collect()
        } else {
            (0..fib[y].object_count())
                .map(|bb| {
                    let fb = act.obj[bb];
                    index[&Cell {
                        f,
                        a: fb,
                        b: bb,
                        phi: fib[x].id(fb),
                    }]
                })
                .collect()
        };
        cleavage.push(row);
    }

    let obj_proj: Vec<Ob> = (0..b.object_count())
        .flat_map(|x| std::iter::repeat_n(x, fib[x].object_count()))
        .collect();
    let mor_proj: Vec<Mor> = cells.iter().map(|c| c.f).collect();
    let components = cells.iter().map(|c| c.phi).collect();
    let total = Arc::new(FinCat::assemble(objects, morphisms, identity, table));
    let projection = FinFunctor::new(total.clone(), base.clone(), obj_proj, mor_proj);
    FibredCategory {
        total,
        base,
        projection,
        cleavage,
        fibers,
        components,
        variant,
    }
}

/// Pair names `(f,y)` / `(f,x)` for concrete variants and `(f,φ)` for
/// abstract ones. If two morphisms would share a name (a fiber map that is
/// not injective), every morphism gets the triple `(f,source,target)` form,
/// with `φ` in place of the component it determines for abstract variants.
fn name_cells(
    b: &FinCat,
    fib: &[Arc<FinCat>],
    cells: &[Cell],
    left: bool,
    points: Option<&Vec<Vec<String>>>,
) -> Vec<String> {
    let ob_label = |x: Ob, a: Ob| match points {
        Some(p) => p[x][a].clone(),
        None => fib[x].ob_name(a).to_string(),
    };
    let pair = |c: &Cell| {
        let (x, y) = (b.src(c.f), b.tgt(c.f));
        let second = match (points.is_some(), left) {
            (true, true) => ob_label(y, c.b),
            (true, false) => ob_label(x, c.a),
            (false, true) => fib[y].mor_name(c.phi).to_string(),
            (false, false) => fib[x].mor_name(c.phi).to_string(),
        };
        format!("({},{second})", b.mor_name(c.f))
    };
    let names: Vec<String> = cells.iter().map(pair).collect();
    let mut seen = std::collections::HashSet::with_capacity(names.len());
    if names.iter().all(|n| seen.insert(n.as_str())) {
        return names;
    }
    cells
        .iter()
        .map(|c| {
            let (x, y) = (b.src(c.f), b.tgt(c.f));
            let f = b.mor_name(c.f);
            match (points.is_some(), left) {
                (true, _) => format!("({f},{},{})", ob_label(x, c.a), ob_label(y, c.b)),
                (false, true) => format!("({f},{},{})", ob_label(x, c.a), fib[y].mor_name(c.phi)),
                (false, false) => format!("({f},{},{})", fib[x].mor_name(c.phi), ob_label(y, c.b)),
            }
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{group_as_category, standard_group, GroupAction, GroupKind};
    use crate::category::{check_category, check_functor, codiscrete_groupoid, discrete_category};

    pub(crate) fn c3_rotation() -> SetValuedAction {
        let g = Arc::new(standard_group(GroupKind::Cyclic, 3));
        GroupAction::natural(g).to_set_valued()
    }

    #[test]
    fn concrete_left_rotation_counts() {
        let fc = grothendieck_complete(&c3_rotation().into(), Variant::ConcreteLeft).unwrap();
        assert_eq!(fc.total.object_count(), 3);
        assert_eq!(fc.total.morphism_count(), 9);
        assert!(check_category(&fc.total).ok);
        assert!(check_functor(&fc.projection).ok);
        assert_eq!(fc.total.ob_name(0), "(*,1)");
        // r sends 1 to 2: the lift at (*,1) is (r,2).
        let r = fc.base.mor("r").unwrap();
        assert_eq!(fc.total.mor_name(fc.cleavage[r][0]), "(r,2)");
    }

    #[test]
    fn abstract_left_single_fiber_object() {
        let g = Arc::new(group_as_category(&standard_group(GroupKind::Cyclic, 3)));
        let x = Arc::new(discrete_category(["X"]));
        let act = (0..3)
            .map(|_| FinFunctor::identity(x.clone()))
            .collect();
        let a = CatValuedAction {
            base: g,
            fibers: vec![x],
            act,
        };
        let fc = grothendieck_complete(&a.into(), Variant::AbstractLeft).unwrap();
        assert_eq!((fc.total.object_count(), fc.total.morphism_count()), (1, 3));
        assert_eq!(fc.total.ob_name(0), "(*,X)");
        assert_eq!(fc.total.mor_name(1), "(r,id_X)");
    }

    #[test]
    fn abstract_left_over_codiscrete() {
        let base = Arc::new(codiscrete_groupoid(3));
        let fibers: Vec<Arc<FinCat>> = (1..=3)
            .map(|i| Arc::new(discrete_category([format!("x{i}")])))
            .collect();
        let act = base
            .morphisms()
            .iter()
            .map(|m| FinFunctor::new(fibers[m.src].clone(), fibers[m.tgt].clone(), vec![0], vec![0]))
            .collect();
        let a = CatValuedAction {
            base,
            fibers,
            act,
        };
        let fc = grothendieck_complete(&a.into(), Variant::AbstractLeft).unwrap();
        assert_eq!(fc.total.objects(), ["(1,x1)", "(2,x2)", "(3,x3)"]);
        assert_eq!(fc.total.morphism_count(), 9);
        assert!(check_category(&fc.total).ok);
    }

    #[test]
    fn concrete_needs_sets() {
        let a = c3_rotation().to_cat_valued();
        assert!(matches!(
            grothendieck_complete(&a.into(), Variant::ConcreteRight),
            Err(Error::VariantMismatch(_))
        ));
    }

    #[test]
    fn collapsing_map_switches_to_triples() {
        // Free arrow f: A -> B with fibers {1,2} -> {1}.
        let mut bld = FinCat::builder();
        bld.objects(["A", "B"])
            .morphism("f", "A", "B")
            .auto_identities()
            .infer_unit_entries();
        let base = Arc::new(bld.build().unwrap());
        let a = SetValuedAction {
            base: base.clone(),
            fibers: vec![vec!["1".into(), "2".into()], vec!["1".into()]],
            act: vec![vec![0, 0], vec![0, 1], vec![0]],
        };
        // The builder appends identities after declared morphisms: f, id_A, id_B.
        assert_eq!(base.mor_name(0), "f");
        let left = grothendieck_complete(&a.into(), Variant::ConcreteLeft).unwrap();
        assert!(left.total.mor("(f,1,1)").is_some());
        assert!(left.total.mor("(f,2,1)").is_some());
        assert!(check_category(&left.total).ok);
    }
}
