use std::sync::Arc;

use super::{FinCat, FinFunctor, Mor, Ob};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};

/// A strict isomorphism: `backward ∘ forward` and `forward ∘ backward` are
/// identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
}

impl Isomorphism {
    fn from_tables(c: &Arc<FinCat>, d: &Arc<FinCat>, obj: Vec<Ob>, mor: Vec<Mor>) -> Self {
        let mut inv_obj = vec![0; obj.len()];
        for (x, &y) in obj.iter().enumerate() {
            inv_obj[y] = x;
        }
        let mut inv_mor = vec![0; mor.len()];
        for (f, &g) in mor.iter().enumerate() {
            inv_mor[g] = f;
        }
        Isomorphism {
            forward: FinFunctor::new(c.clone(), d.clone(), obj, mor),
            backward: FinFunctor::new(d.clone(), c.clone(), inv_obj, inv_mor),
        }
    }

    pub fn swap(self) -> Isomorphism {
        Isomorphism {
            forward: self.backward,
            backward: self.forward,
        }
    }

    /// Whether the two functors really are mutually inverse.
    pub fn is_mutually_inverse(&self) -> bool {
        self.backward.after(&self.forward).is_identity()
            && self.forward.after(&self.backward).is_identity()
    }
}

/// Per-object invariant: loop count, then sorted outgoing and incoming
/// hom-set sizes.
fn signature(c: &FinCat, x: Ob) -> (usize, Vec<usize>, Vec<usize>) {
    let n = c.object_count();
    let mut out: Vec<usize> = (0..n).map(|y| c.hom(x, y).len()).collect();
    let mut inc: Vec<usize> = (0..n).map(|y| c.hom(y, x).len()).collect();
    out.sort_unstable();
    inc.sort_unstable();
    (c.hom(x, x).len(), out, inc)
}

/// A cheap invariant that differs between `c` and `d`, if there is one.
/// `None` does not imply the categories are isomorphic.
pub fn count_obstruction(c: &FinCat, d: &FinCat) -> Option<String> {
    if c.object_count() != d.object_count() {
        return Some(format!(
            "object counts {} != {}",
            c.object_count(),
            d.object_count()
        ));
    }
    if c.morphism_count() != d.morphism_count() {
        return Some(format!(
            "morphism counts {} != {}",
            c.morphism_count(),
            d.morphism_count()
        ));
    }
    let n = c.object_count();
    let homs = |k: &FinCat| {
        let mut v: Vec<usize> = (0..n * n).map(|i| k.hom(i / n, i % n).len()).collect();
        v.sort_unstable();
        v
    };
    if homs(c) != homs(d) {
        return Some("hom-set size multisets differ".into());
    }
    let sigs = |k: &FinCat| {
        let mut v: Vec<_> = (0..n).map(|x| signature(k, x)).collect();
        v.sort();
        v
    };
    if sigs(c) != sigs(d) {
        return Some("per-object degree profiles differ".into());
    }
    None
}

struct Search<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    meter: Meter,
    obj: Vec<Option<Ob>>,
    obj_used: Vec<bool>,
    mor: Vec<Option<Mor>>,
    mor_used: Vec<bool>,
    trail: Vec<Mor>,
    c_sig: Vec<(usize, Vec<usize>, Vec<usize>)>,
    d_sig: Vec<(usize, Vec<usize>, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(c: &'a FinCat, d: &'a FinCat, limit: u64) -> Self {
        Search {
            c,
            d,
            meter: Meter::new(limit),
            obj: vec![None; c.object_count()],
            obj_used: vec![false; d.object_count()],
            mor: vec![None; c.morphism_count()],
            mor_used: vec![false; d.morphism_count()],
            trail: Vec::new(),
            c_sig: (0..c.object_count()).map(|x| signature(c, x)).collect(),
            d_sig: (0..d.object_count()).map(|x| signature(d, x)).collect(),
        }
    }

    fn object_fits(&self, x: Ob, y: Ob) -> bool {
        if self.obj_used[y] || self.c_sig[x] != self.d_sig[y] {
            return false;
        }
        self.obj.iter().enumerate().all(|(x2, img)| match img {
            Some(y2) => {
                self.c.hom(x, x2).len() == self.d.hom(y, *y2).len()
                    && self.c.hom(x2, x).len() == self.d.hom(*y2, y).len()
            }
            None => true,
        })
    }

    /// Object phase; `emit` returns `false` to stop the whole search.
    fn objects(&mut self, x: Ob, emit: &mut dyn FnMut(&[Ob], &[Mor]) -> bool) -> Result<bool> {
        if x == self.c.object_count() {
            return self.start_morphisms(emit);
        }
        if self.obj[x].is_some() {
            // Seeded entry, checked before the search started.
            return self.objects(x + 1, emit);
        }
        for y in 0..self.d.object_count() {
            if !self.object_fits(x, y) {
                continue;
            }
            self.meter.tick()?;
            self.obj[x] = Some(y);
            self.obj_used[y] = true;
            let go_on = self.objects(x + 1, emit)?;
            self.obj[x] = None;
            self.obj_used[y] = false;
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn start_morphisms(&mut self, emit: &mut dyn FnMut(&[Ob], &[Mor]) -> bool) -> Result<bool> {
        let mark = self.trail.len();
        let mut ok = true;
        for x in 0..self.c.object_count() {
            let y = self.obj[x].expect("object map complete");
            if !self.assign(self.c.id(x), self.d.id(y)) {
                ok = false;
                break;
            }
        }
        let go_on = if ok { self.morphisms(0, emit)? } else { true };
        self.undo(mark);
        Ok(go_on)
    }

    fn morphisms(&mut self, from: Mor, emit: &mut dyn FnMut(&[Ob], &[Mor]) -> bool) -> Result<bool> {
        let Some(f) = (from..self.c.morphism_count()).find(|&f| self.mor[f].is_none()) else {
            let obj: Vec<Ob> = self.obj.iter().map(|o| o.expect("complete")).collect();
            let table: Vec<Mor> = self.mor.iter().map(|m| m.expect("complete")).collect();
            return Ok(emit(&obj, &table));
        };
        let (s, t) = (
            self.obj[self.c.src(f)].expect("mapped"),
            self.obj[self.c.tgt(f)].expect("mapped"),
        );
        for &g in self.d.hom(s, t) {
            if self.mor_used[g] {
                continue;
            }
            self.meter.tick()?;
            let mark = self.trail.len();
            let go_on = if self.assign(f, g) {
                self.morphisms(f + 1, emit)?
            } else {
                true
            };
            self.undo(mark);
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn set(&mut self, f: Mor, g: Mor) -> bool {
        match self.mor[f] {
            Some(h) => h == g,
            None if self.mor_used[g] => false,
            None => {
                self.mor[f] = Some(g);
                self.mor_used[g] = true;
                self.trail.push(f);
                true
            }
        }
    }

    /// Assigns `f ↦ g` and propagates through composites with every
    /// already-assigned morphism.
    fn assign(&mut self, f: Mor, g: Mor) -> bool {
        if !self.set(f, g) {
            return false;
        }
        let mut queue = vec![f];
        while let Some(a) = queue.pop() {
            let ga = self.mor[a].expect("assigned");
            for b in 0..self.c.morphism_count() {
                let Some(gb) = self.mor[b] else { continue };
                for (outer, inner, g_outer, g_inner) in [(b, a, gb, ga), (a, b, ga, gb)] {
                    if !self.c.composable(outer, inner) {
                        continue;
                    }
                    let k = self.c.comp(outer, inner);
                    let Some(img) = self.d.compose(g_outer, g_inner) else {
                        return false;
                    };
                    let fresh = self.mor[k].is_none();
                    if !self.set(k, img) {
                        return false;
                    }
                    if fresh {
                        queue.push(k);
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().expect("trail");
            let g = self.mor[f].take().expect("assigned");
            self.mor_used[g] = false;
        }
    }
}

fn run(
    c: &FinCat,
    d: &FinCat,
    seed: &[(Ob, Ob)],
    budget: Budget,
    emit: &mut dyn FnMut(&[Ob], &[Mor]) -> bool,
) -> Result<()> {
    if count_obstruction(c, d).is_some() {
        return Ok(());
    }
    if !budget.admits(c.object_count(), c.morphism_count()) {
        return Err(Error::BudgetExceeded {
            nodes: 0,
            limit: budget.nodes,
        });
    }
    let mut s = Search::new(c, d, budget.nodes);
    for &(x, y) in seed {
        if s.obj[x].is_some_and(|y2| y2 != y) || (s.obj[x].is_none() && !s.object_fits(x, y)) {
            return Ok(());
        }
        s.obj[x] = Some(y);
        s.obj_used[y] = true;
    }
    s.objects(0, emit)?;
    Ok(())
}

/// Searches for a strict isomorphism `c → d`.
///
/// `Ok(None)` means the search was exhaustive and found nothing; running out
/// of budget is reported as [`Error::BudgetExceeded`] instead.
pub fn find_isomorphism(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    budget: Budget,
) -> Result<Option<Isomorphism>> {
    find_isomorphism_seeded(c, d, &[], budget)
}

/// As [`find_isomorphism`], with some object images fixed in advance.
pub fn find_isomorphism_seeded(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    seed: &[(Ob, Ob)],
    budget: Budget,
) -> Result<Option<Isomorphism>> {
    let mut found = None;
    run(c, d, seed, budget, &mut |obj, mor| {
        found = Some((obj.to_vec(), mor.to_vec()));
        false
    })?;
    Ok(found.map(|(obj, mor)| Isomorphism::from_tables(c, d, obj, mor)))
}

/// Every strict isomorphism `c → d` whose object map extends `seed`, in
/// search order (object images lexicographic, then morphism images).
pub fn all_isomorphisms(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    seed: &[(Ob, Ob)],
    budget: Budget,
) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    run(c, d, seed, budget, &mut |obj, mor| {
        out.push(FinFunctor::new(c.clone(), d.clone(), obj.to_vec(), mor.to_vec()));
        true
    })?;
    Ok(out)
}
